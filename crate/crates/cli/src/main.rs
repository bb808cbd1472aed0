use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use periodforge::curve_family::CurveType;
use periodforge::eisenstein::{eisenstein_G, Cusp, ShiftPoint, DEFAULT_CUSP_HEIGHT};
use periodforge::elliptic_kernel::{dedekind_eta, fourier_coefficients, wp, wp_prime, wzeta, FramedPeriods};
use periodforge::identity_suite::{self, Report, DEFAULT_TOL};
use periodforge::inversion::{cusp_table, invert, modular_generators};
use periodforge::laurent_engine::{solve_formal, DEFAULT_ORDER};
use periodforge::periods::{anchor_frame, periods_agm_a2, periods_newton, PeriodResult};
use periodforge::profile::Profile;
use periodforge::{Error, ModuliPoint, C64};

#[derive(Parser)]
#[command(name = "periodforge", version, about = "Period maps of the elliptic families A2, B2, G2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    A2,
    B2,
    G2,
}

impl From<Kind> for CurveType {
    fn from(k: Kind) -> Self {
        match k {
            Kind::A2 => CurveType::A2,
            Kind::B2 => CurveType::B2,
            Kind::G2 => CurveType::G2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Func {
    Wp,
    Wpprime,
    Wzeta,
    Eta,
    #[value(name = "G")]
    G,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Newton,
    Agm,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Expr {
    E4,
    E6,
    Alpha2,
    Beta4,
    Alpha1,
    Beta3,
    Eta24,
    Delta,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Monodromy,
    Cusps,
    Identities,
    Roundtrip,
    Laurent,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "E", alias = "e")]
    E,
    #[value(name = "S", alias = "s")]
    S,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a kernel function at a point of a framed lattice.
    Eval {
        /// Accepted for uniformity; the kernels depend only on the frame.
        #[arg(long = "type", value_enum, default_value = "a2")]
        _ty: Kind,
        #[arg(long = "fn", value_enum)]
        func: Func,
        #[arg(long, value_parser = parse_complex, default_value = "0")]
        z: C64,
        #[arg(long, value_parser = parse_complex)]
        omega0: C64,
        #[arg(long, value_parser = parse_complex)]
        omega1: C64,
        /// Torsion shift "r0,r1" for G.
        #[arg(long, default_value = "0,0")]
        shift: String,
        /// Weight m >= 3 for G.
        #[arg(long, default_value_t = 4)]
        weight: u32,
    },
    /// Moduli (g_s, g_l) of a framed lattice.
    Invert {
        #[arg(long = "type", value_enum)]
        ty: Kind,
        #[arg(long, value_parser = parse_complex)]
        omega0: C64,
        #[arg(long, value_parser = parse_complex)]
        omega1: C64,
    },
    /// Framed periods of a moduli point.
    Periods {
        #[arg(long = "type", value_enum)]
        ty: Kind,
        #[arg(long, value_parser = parse_complex)]
        gs: C64,
        #[arg(long, value_parser = parse_complex)]
        gl: C64,
        #[arg(long, value_enum, default_value = "newton")]
        method: Method,
    },
    /// Exact Laurent coefficients at a point at infinity.
    Series {
        #[arg(long = "type", value_enum)]
        ty: Kind,
        #[arg(long, default_value_t = 1)]
        infinity: usize,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: i32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Fourier coefficients of a modular form at i infinity.
    Qexp {
        #[arg(long, value_enum)]
        expr: Expr,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        #[arg(long, default_value_t = identity_suite::FOURIER_HEIGHT)]
        height: f64,
    },
    /// Run a verification suite; exits 0 iff every check passes.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Boundary values at a cusp.
    Cusp {
        #[arg(long = "type", value_enum)]
        ty: Kind,
        #[arg(long, value_enum, default_value = "E")]
        which: Which,
        #[arg(long, default_value_t = DEFAULT_CUSP_HEIGHT)]
        height: f64,
    },
}

/// Parses "1", "-2.5", "10i", "0.2+1.3i", "1e-3-2i" or "[re,im]".
fn parse_complex(s: &str) -> Result<C64, String> {
    let t = s.trim().replace(' ', "");
    let bad = || format!("cannot parse {s:?} as a complex number");
    if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 2 {
            return Err(bad());
        }
        let re = parts[0].parse::<f64>().map_err(|_| bad())?;
        let im = parts[1].parse::<f64>().map_err(|_| bad())?;
        return Ok(C64::new(re, im));
    }
    if let Some(body) = t.strip_suffix('i') {
        // Split at the last sign that is not part of an exponent.
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            v => v.parse::<f64>().map_err(|_| bad())?,
        };
        let re = re.parse::<f64>().map_err(|_| bad())?;
        return Ok(C64::new(re, im));
    }
    t.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| bad())
}

fn cj(z: C64) -> Value {
    json!([z.re, z.im])
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Pole { .. } => "pole",
        Error::DegenerateFrame { .. } => "degenerate_frame",
        Error::Domain(_) => "domain",
        Error::UnsupportedWeight(_) => "unsupported_weight",
        Error::UnknownSeries { .. } => "unknown_series",
        Error::OutOfRange(_) => "out_of_range",
        Error::NotUnimodular(_) => "not_unimodular",
        Error::Inconsistency(_) => "inconsistency",
        Error::Discriminant(_) => "discriminant",
        Error::Convergence { .. } => "convergence",
        Error::Contract(_) => "contract",
    }
}

enum Output {
    Json(Value),
    Text(String),
    /// A report: printed as JSON, exit status from its pass flag.
    Report(Report),
}

fn period_json(t: CurveType, g: &ModuliPoint, r: &PeriodResult) -> Value {
    json!({
        "type": t.name(),
        "g_s": cj(g.g_s),
        "g_l": cj(g.g_l),
        "method": r.method,
        "omega0": cj(r.frame.omega0),
        "omega1": cj(r.frame.omega1),
        "tau": cj(r.frame.tau()),
        "residual": r.residual,
        "reduced": r.reduced,
    })
}

fn qexp_function(expr: Expr) -> impl Fn(C64) -> periodforge::Result<C64> {
    move |tau: C64| {
        let w = FramedPeriods::from_tau(tau);
        let gen = |t: CurveType, name: &str| -> periodforge::Result<C64> { Ok(modular_generators(t, &w)?[name]) };
        match expr {
            Expr::E4 => gen(CurveType::A2, "e4"),
            Expr::E6 => gen(CurveType::A2, "e6"),
            Expr::Alpha2 => gen(CurveType::B2, "alpha2"),
            Expr::Beta4 => gen(CurveType::B2, "beta4"),
            Expr::Alpha1 => gen(CurveType::G2, "alpha1"),
            Expr::Beta3 => gen(CurveType::G2, "beta3"),
            Expr::Eta24 => Ok(dedekind_eta(tau)?.powi(24)),
            Expr::Delta => {
                let g = invert(CurveType::A2, &w)?.g;
                Ok(periodforge::curve_family::discriminant(CurveType::A2, g) / std::f64::consts::PI.powi(12))
            }
        }
    }
}

fn run(cmd: Command) -> periodforge::Result<Output> {
    match cmd {
        Command::Eval { func, z, omega0, omega1, shift, weight, .. } => {
            let w = FramedPeriods::new(omega0, omega1);
            let value = match func {
                Func::Wp => wp(z, &w)?,
                Func::Wpprime => wp_prime(z, &w)?,
                Func::Wzeta => wzeta(z, &w)?,
                Func::Eta => {
                    w.validate()?;
                    dedekind_eta(w.tau())?
                }
                Func::G => eisenstein_G(weight, shift.parse::<ShiftPoint>()?, &w)?,
            };
            Ok(Output::Json(json!({ "value": cj(value) })))
        }
        Command::Invert { ty, omega0, omega1 } => {
            let t = CurveType::from(ty);
            let r = invert(t, &FramedPeriods::new(omega0, omega1))?;
            Ok(Output::Json(json!({
                "type": t.name(),
                "g_s": cj(r.g.g_s),
                "g_l": cj(r.g.g_l),
                "diagnostics": r.diagnostics,
            })))
        }
        Command::Periods { ty, gs, gl, method } => {
            let t = CurveType::from(ty);
            let g = ModuliPoint::new(t, gs, gl);
            let r = match method {
                Method::Newton => periods_newton(t, &g, &anchor_frame())?,
                Method::Agm => periods_agm_a2(&g)?,
            };
            Ok(Output::Json(period_json(t, &g, &r)))
        }
        Command::Series { ty, infinity, order, format } => {
            let sol = solve_formal(ty.into(), infinity, order)?;
            Ok(match format {
                Format::Csv => Output::Text(sol.to_csv()),
                Format::Json => Output::Json(sol.to_json()),
            })
        }
        Command::Qexp { expr, nmax, height } => {
            let profile = Profile::from_env();
            let s = fourier_coefficients(qexp_function(expr), nmax, height, profile.fourier_samples)?;
            let coeffs: Vec<Value> = s.coefficients.iter().map(|&c| cj(c)).collect();
            Ok(Output::Json(json!({ "nmax": nmax, "height": height, "coefficients": coeffs })))
        }
        Command::Verify { suite, tol, seed, samples } => {
            let report = match suite {
                Suite::Monodromy => identity_suite::monodromy_suite(seed),
                Suite::Cusps => identity_suite::cusp_suite(tol.unwrap_or(1e-6)),
                Suite::Identities => identity_suite::identities_suite(samples, seed, tol.unwrap_or(DEFAULT_TOL)),
                Suite::Roundtrip => identity_suite::round_trip_suite(samples, seed, tol.unwrap_or(1e-9)),
                Suite::Laurent => identity_suite::laurent_suite(DEFAULT_ORDER),
            };
            Ok(Output::Report(report))
        }
        Command::Cusp { ty, which, height } => {
            let t = CurveType::from(ty);
            let cusp = match which {
                Which::E => Cusp::E,
                Which::S => Cusp::S,
            };
            let rows: Vec<Value> = cusp_table(t, cusp, height)?
                .into_iter()
                .map(|r| {
                    json!({
                        "label": r.label,
                        "weight": r.weight,
                        "value": cj(r.value),
                        "expected": r.expected_text,
                        "expected_value": cj(r.expected),
                        "abs_error": (r.value - r.expected).norm(),
                    })
                })
                .collect();
            Ok(Output::Json(json!({ "type": t.name(), "cusp": format!("{cusp:?}"), "height": height, "rows": rows })))
        }
    }
}

fn json_text(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

/// Writes a line to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Output::Json(v)) => {
            emit(&json_text(&v));
            ExitCode::SUCCESS
        }
        Ok(Output::Text(s)) => {
            emit(s.trim_end());
            ExitCode::SUCCESS
        }
        Ok(Output::Report(r)) => {
            emit(&json_text(&serde_json::to_value(&r).expect("serializable")));
            if r.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let v = json!({ "error": error_kind(&e), "message": e.to_string() });
            emit(&json_text(&v));
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::parse_complex;
    use periodforge::C64;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("10i").unwrap(), C64::new(0.0, 10.0));
        assert_eq!(parse_complex("0.2+1.3i").unwrap(), C64::new(0.2, 1.3));
        assert_eq!(parse_complex("1e-3-2i").unwrap(), C64::new(1e-3, -2.0));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert_eq!(parse_complex("[1,2]").unwrap(), C64::new(1.0, 2.0));
        assert_eq!(parse_complex("3").unwrap(), C64::new(3.0, 0.0));
        assert!(parse_complex("x").is_err());
    }
}
