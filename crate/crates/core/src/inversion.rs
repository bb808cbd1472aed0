//! The inversion map from framed periods to moduli, the inverse functions
//! x(z), y(z) as partial fractions of zeta and wp, and the modular
//! generators at the cusps.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::curve_family::{discriminant, evaluate_F, grad_F, CurvePoint, CurveType, ModuliPoint};
use crate::eisenstein::{eisenstein_g_lattice, slash_value, Cusp, ShiftPoint};
use crate::elliptic_kernel::{FramedPeriods, Lattice};
use crate::error::{Error, Result};
use crate::C64;

/// Relative tolerance of the G2 cross-check g_s^2 = wp(omega0/3)/3.
pub const CROSS_CHECK_TOL: f64 = 1e-9;
/// Threshold on |Delta| / rho^12 below which a point is flagged as
/// numerically on the discriminant.
pub const NEAR_DISCRIMINANT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Diagnostics {
    /// G2 only: relative mismatch of g_s^2 against wp(omega0/3)/3.
    pub cross_check: Option<f64>,
    /// G2 only: relative mismatch between the two zeta expressions of g_s.
    pub gs_alternative: Option<f64>,
    /// |F(x(z), y(z), g)| at a fixed interior sample point.
    pub energy_residual: f64,
    pub discriminant_abs: f64,
    pub near_discriminant: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InversionResult {
    pub g: ModuliPoint,
    pub diagnostics: Diagnostics,
}

/// Weighted size of g in frame units: max(|g_s|^(1/m_s), |g_l|^(1/m_l)).
pub fn weighted_norm(g: &ModuliPoint) -> f64 {
    let (ms, ml) = g.ty.frame_weights();
    g.g_s.norm().powf(1.0 / ms as f64).max(g.g_l.norm().powf(1.0 / ml as f64))
}

fn rel(a: C64, b: C64, floor: f64) -> f64 {
    (a - b).norm() / (a.norm().max(b.norm()) + floor)
}

/// The moduli point E(w) without diagnostics.
pub fn invert_lattice(t: CurveType, lat: &Lattice) -> Result<ModuliPoint> {
    let w = *lat.frame();
    let third = ShiftPoint::along_omega0(1, 3);
    let half = ShiftPoint::along_omega0(1, 2);
    let (g_s, g_l) = match t {
        CurveType::A2 => (
            lat.eisenstein_zero(4)? * (15.0 / 4.0),
            lat.eisenstein_zero(6)? * (35.0 / 16.0),
        ),
        CurveType::B2 => {
            let p = lat.wp(w.omega0 / 2.0)?;
            let g4 = lat.eisenstein_zero(4)?;
            let g4h = eisenstein_g_lattice(4, half, lat)?;
            (p * 1.5, p * p * (5.0 / 32.0) + (g4 - g4h) * (5.0 / 8.0))
        }
        CurveType::G2 => {
            let gs = lat.zeta(w.omega0 / 3.0)? - lat.zeta(w.omega0 / 2.0)? * (2.0 / 3.0);
            let g3 = eisenstein_g_lattice(3, third, lat)?;
            (gs, 2.0 * gs * gs * gs - g3)
        }
    };
    Ok(ModuliPoint::new(t, g_s, g_l))
}

/// E(w): closed forms in Eisenstein series, with consistency diagnostics.
pub fn invert(t: CurveType, w: &FramedPeriods) -> Result<InversionResult> {
    let lat = Lattice::new(w)?;
    let g = invert_lattice(t, &lat)?;
    let (u, _, _) = lat.reduced_basis();
    let unit = u.norm().powi(-2);
    let (mut cross_check, mut gs_alternative) = (None, None);
    if t == CurveType::G2 {
        let p3 = lat.wp(w.omega0 / 3.0)? / 3.0;
        let err = rel(g.g_s * g.g_s, p3, 1e-3 * unit);
        if err > CROSS_CHECK_TOL {
            return Err(Error::Inconsistency(format!(
                "g_s^2 differs from wp(omega0/3)/3 by {err:e}"
            )));
        }
        cross_check = Some(err);
        let alt = lat.zeta(w.omega0 / 3.0)? * (2.0 / 3.0) - lat.zeta(w.omega0 * (2.0 / 3.0))? / 3.0;
        gs_alternative = Some(rel(g.g_s, alt, 1e-3 * unit.sqrt()));
    }
    let inv = InverseFunctions::with_moduli(t, lat, g)?;
    let sample = w.omega0 * 0.37 + w.omega1 * 0.41;
    let energy_residual = inv.energy_residual(sample)?.norm();
    let delta = discriminant(t, g).norm();
    let near = delta <= NEAR_DISCRIMINANT * weighted_norm(&g).powi(12);
    Ok(InversionResult {
        g,
        diagnostics: Diagnostics {
            cross_check,
            gs_alternative,
            energy_residual,
            discriminant_abs: delta,
            near_discriminant: near,
        },
    })
}

/// x(z), y(z) for a fixed frame, with the constant terms precomputed.
#[derive(Debug, Clone)]
pub struct InverseFunctions {
    t: CurveType,
    lat: Lattice,
    g: ModuliPoint,
    c_x: C64,
    c_y: C64,
}

/// Relative pole-proximity threshold, in units of the shortest period.
pub const POLE_TOL: f64 = 1e-10;

impl InverseFunctions {
    pub fn new(t: CurveType, w: &FramedPeriods) -> Result<Self> {
        let lat = Lattice::new(w)?;
        let g = invert_lattice(t, &lat)?;
        Self::with_moduli(t, lat, g)
    }

    fn with_moduli(t: CurveType, lat: Lattice, g: ModuliPoint) -> Result<Self> {
        let w0 = lat.frame().omega0;
        let (c_x, c_y) = match t {
            CurveType::A2 => (C64::new(0.0, 0.0), C64::new(0.0, 0.0)),
            CurveType::B2 => (-lat.zeta(w0 / 2.0)? / 2.0, C64::new(0.0, 0.0)),
            CurveType::G2 => {
                let z1 = lat.zeta(w0 / 3.0)?;
                let z2 = lat.zeta(w0 * (2.0 / 3.0))?;
                (-(z1 + z2) / 6.0, (z1 + z2) / 2.0)
            }
        };
        Ok(InverseFunctions { t, lat, g, c_x, c_y })
    }

    pub fn moduli(&self) -> ModuliPoint {
        self.g
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lat
    }

    /// Translates of the lattice where x or y has a pole, as multiples of omega0.
    fn pole_shifts(&self, for_y: bool) -> &'static [f64] {
        match (self.t, for_y) {
            (CurveType::A2, _) => &[0.0],
            (CurveType::B2, _) => &[0.0, 0.5],
            (CurveType::G2, false) => &[0.0, 1.0 / 3.0],
            (CurveType::G2, true) => &[0.0, 1.0 / 3.0, 2.0 / 3.0],
        }
    }

    /// Distance from z to the pole set of x and y.
    pub fn pole_distance(&self, z: C64) -> f64 {
        let w0 = self.lat.frame().omega0;
        self.pole_shifts(true)
            .iter()
            .map(|&s| self.lat.distance_to_lattice(z - w0 * s))
            .fold(f64::INFINITY, f64::min)
    }

    fn check(&self, z: C64, for_y: bool) -> Result<()> {
        let w0 = self.lat.frame().omega0;
        let (u, _, _) = self.lat.reduced_basis();
        for &s in self.pole_shifts(for_y) {
            let d = self.lat.distance_to_lattice(z - w0 * s);
            if d < POLE_TOL * u.norm() {
                return Err(Error::Pole { distance: d });
            }
        }
        Ok(())
    }

    pub fn x(&self, z: C64) -> Result<C64> {
        self.check(z, false)?;
        let w0 = self.lat.frame().omega0;
        let l = &self.lat;
        Ok(match self.t {
            CurveType::A2 => l.wp(z)? / 4.0,
            CurveType::B2 => self.c_x + (l.zeta(z)? - l.zeta(z - w0 / 2.0)?) / 2.0,
            CurveType::G2 => self.c_x + (l.zeta(z)? - l.zeta(z - w0 / 3.0)?) / 2.0,
        })
    }

    pub fn y(&self, z: C64) -> Result<C64> {
        self.check(z, true)?;
        let w0 = self.lat.frame().omega0;
        let l = &self.lat;
        Ok(match self.t {
            CurveType::A2 => l.wp_prime(z)? / 8.0,
            CurveType::B2 => (l.wp(z - w0 / 2.0)? - l.wp(z)?) / 4.0,
            CurveType::G2 => {
                self.c_y - (l.zeta(z)? + l.zeta(z - w0 / 3.0)?) / 2.0 + l.zeta(z - w0 * (2.0 / 3.0))?
            }
        })
    }

    pub fn point(&self, z: C64) -> Result<CurvePoint> {
        Ok(CurvePoint::new(self.x(z)?, self.y(z)?))
    }

    /// F(x(z), y(z), g).
    pub fn energy_residual(&self, z: C64) -> Result<C64> {
        Ok(evaluate_F(self.t, self.point(z)?, self.g))
    }

    /// (dx/dz - dF/dy, dy/dz + dF/dx) with derivatives from central
    /// differences, Richardson-extrapolated once.
    pub fn hamilton_residual(&self, z: C64) -> Result<(C64, C64)> {
        let d = self.pole_distance(z);
        // after one Richardson step the truncation error is O(h^4), so a step
        // near eps^(1/5) of the local scale balances it against rounding
        let h = 1e-3 * d.min(self.lat.frame().omega0.norm());
        let diff = |h: f64| -> Result<(C64, C64)> {
            let (p, m) = (self.point(z + h)?, self.point(z - h)?);
            Ok(((p.x - m.x) / (2.0 * h), (p.y - m.y) / (2.0 * h)))
        };
        let (dx1, dy1) = diff(h)?;
        let (dx2, dy2) = diff(h / 2.0)?;
        let dx = (dx2 * 4.0 - dx1) / 3.0;
        let dy = (dy2 * 4.0 - dy1) / 3.0;
        let (fx, fy) = grad_F(self.t, self.point(z)?, self.g);
        Ok((dx - fy, dy + fx))
    }
}

pub fn x_of_z(t: CurveType, z: C64, w: &FramedPeriods) -> Result<C64> {
    InverseFunctions::new(t, w)?.x(z)
}

pub fn y_of_z(t: CurveType, z: C64, w: &FramedPeriods) -> Result<C64> {
    InverseFunctions::new(t, w)?.y(z)
}

pub fn hamilton_residual(t: CurveType, z: C64, w: &FramedPeriods) -> Result<(C64, C64)> {
    InverseFunctions::new(t, w)?.hamilton_residual(z)
}

/// Generators of the ring of modular forms, normalized to take the value 1
/// (or 0) at the cusp i infinity: {e4, e6}, {alpha2, beta4}, {alpha1, beta3}.
pub fn modular_generators(t: CurveType, w: &FramedPeriods) -> Result<BTreeMap<&'static str, C64>> {
    let g = invert_lattice(t, &Lattice::new(w)?)?;
    Ok(generators_from_moduli(&g, w.omega0))
}

pub fn generators_from_moduli(g: &ModuliPoint, omega0: C64) -> BTreeMap<&'static str, C64> {
    let (s, l) = (g.g_s, g.g_l);
    let mut out = BTreeMap::new();
    match g.ty {
        CurveType::A2 => {
            out.insert("e4", s * 12.0 * omega0.powi(4) / PI.powi(4));
            out.insert("e6", l * 216.0 * omega0.powi(6) / PI.powi(6));
        }
        CurveType::B2 => {
            out.insert("alpha2", s * omega0.powi(2) / PI.powi(2));
            out.insert("beta4", (l + s * s / 8.0) * omega0.powi(4) / (16.0 * PI.powi(4)));
        }
        CurveType::G2 => {
            let r3 = 3f64.sqrt();
            out.insert("alpha1", s * r3 * omega0 / PI);
            out.insert("beta3", -l * (1.5 * r3) * omega0.powi(3) / PI.powi(3));
        }
    }
    out
}

/// Inverse of [`generators_from_moduli`].
pub fn moduli_from_generators(t: CurveType, a: C64, b: C64, omega0: C64) -> ModuliPoint {
    let (g_s, g_l) = match t {
        CurveType::A2 => (a * PI.powi(4) / (12.0 * omega0.powi(4)), b * PI.powi(6) / (216.0 * omega0.powi(6))),
        CurveType::B2 => {
            let s = a * PI.powi(2) / omega0.powi(2);
            (s, b * 16.0 * PI.powi(4) / omega0.powi(4) - s * s / 8.0)
        }
        CurveType::G2 => {
            let r3 = 3f64.sqrt();
            (a * PI / (r3 * omega0), -b * 2.0 * PI.powi(3) / (3.0 * r3 * omega0.powi(3)))
        }
    };
    ModuliPoint::new(t, g_s, g_l)
}

/// One boundary value: computed value at the cusp and the closed form.
#[derive(Debug, Clone, Serialize)]
pub struct CuspRow {
    pub label: &'static str,
    pub weight: i32,
    pub value: C64,
    pub expected: C64,
    pub expected_text: &'static str,
}

type FrameFn = fn(&FramedPeriods) -> Result<C64>;
type Row = (&'static str, i32, Box<dyn Fn(&FramedPeriods) -> Result<C64>>, C64, &'static str);

fn row_g_s(t: CurveType) -> impl Fn(&FramedPeriods) -> Result<C64> {
    move |w| Ok(invert_lattice(t, &Lattice::new(w)?)?.g_s)
}

fn row_g_l(t: CurveType) -> impl Fn(&FramedPeriods) -> Result<C64> {
    move |w| Ok(invert_lattice(t, &Lattice::new(w)?)?.g_l)
}

fn g_zero(m: u32) -> impl Fn(&FramedPeriods) -> Result<C64> {
    move |w| Lattice::new(w)?.eisenstein_zero(m)
}

fn g_shift(m: u32, num: i64, den: i64) -> impl Fn(&FramedPeriods) -> Result<C64> {
    move |w| eisenstein_g_lattice(m, ShiftPoint::along_omega0(num, den), &Lattice::new(w)?)
}

/// Boundary values of the series and of (g_s, g_l) at the cusps E (i infinity)
/// and S (0), approximated at tau = i height with omega0 = 1.
pub fn cusp_table(t: CurveType, cusp: Cusp, height: f64) -> Result<Vec<CuspRow>> {
    let pi = PI;
    let r3 = 3f64.sqrt();
    let c = |re: f64| C64::new(re, 0.0);
    let ci = |im: f64| C64::new(0.0, im);
    let e = cusp == Cusp::E;
    let pick = |a: C64, b: C64| if e { a } else { b };
    let mut rows: Vec<Row> = Vec::new();
    let p_half: FrameFn = |w| Lattice::new(w)?.wp(w.omega0 / 2.0);
    let p_third: FrameFn = |w| Lattice::new(w)?.wp(w.omega0 / 3.0);
    match t {
        CurveType::A2 => {
            rows.push(("G4(0)", 4, Box::new(g_zero(4)), c(pi.powi(4) / 45.0), "pi^4/45"));
            rows.push(("G6(0)", 6, Box::new(g_zero(6)), c(2.0 * pi.powi(6) / 945.0), "2pi^6/945"));
            rows.push(("g_s", 4, Box::new(row_g_s(t)), c(pi.powi(4) / 12.0), "pi^4/12"));
            rows.push(("g_l", 6, Box::new(row_g_l(t)), c(pi.powi(6) / 216.0), "pi^6/216"));
        }
        CurveType::B2 => {
            rows.push(("G4(0)", 4, Box::new(g_zero(4)), c(pi.powi(4) / 45.0), "pi^4/45"));
            rows.push((
                "wp(omega0/2)",
                2,
                Box::new(p_half),
                pick(c(2.0 * pi * pi / 3.0), c(-pi * pi / 3.0)),
                if e { "2pi^2/3" } else { "-pi^2/3" },
            ));
            rows.push((
                "wp(omega0/2)^2",
                4,
                Box::new(move |w: &FramedPeriods| Ok(p_half(w)?.powi(2))),
                pick(c(4.0 * pi.powi(4) / 9.0), c(pi.powi(4) / 9.0)),
                if e { "4pi^4/9" } else { "pi^4/9" },
            ));
            rows.push((
                "G4(omega0/2)",
                4,
                Box::new(g_shift(4, 1, 2)),
                pick(c(pi.powi(4) / 3.0), c(0.0)),
                if e { "pi^4/3" } else { "0" },
            ));
            rows.push((
                "g_s",
                2,
                Box::new(row_g_s(t)),
                pick(c(pi * pi), c(-pi * pi / 2.0)),
                if e { "pi^2" } else { "-pi^2/2" },
            ));
            rows.push((
                "g_l",
                4,
                Box::new(row_g_l(t)),
                pick(c(-pi.powi(4) / 8.0), c(pi.powi(4) / 32.0)),
                if e { "-pi^4/8" } else { "pi^4/32" },
            ));
        }
        CurveType::G2 => {
            let combo: FrameFn = |w| {
                let l = Lattice::new(w)?;
                Ok(l.zeta(w.omega0 / 3.0)? - l.zeta(w.omega0 / 2.0)? * (2.0 / 3.0))
            };
            rows.push((
                "zeta(omega0/3)-2/3zeta(omega0/2)",
                1,
                Box::new(combo),
                pick(c(pi / r3), ci(-pi / 3.0)),
                if e { "pi/sqrt3" } else { "-i pi/3" },
            ));
            rows.push((
                "wp(omega0/3)",
                2,
                Box::new(p_third),
                pick(c(pi * pi), c(-pi * pi / 3.0)),
                if e { "pi^2" } else { "-pi^2/3" },
            ));
            rows.push((
                "G3(omega0/3)",
                3,
                Box::new(g_shift(3, 1, 3)),
                pick(c(4.0 * pi.powi(3) / (3.0 * r3)), c(0.0)),
                if e { "4pi^3/(3sqrt3)" } else { "0" },
            ));
            rows.push((
                "g_s",
                1,
                Box::new(row_g_s(t)),
                pick(c(pi / r3), ci(-pi / 3.0)),
                if e { "pi/sqrt3" } else { "-i pi/3" },
            ));
            rows.push((
                "g_l",
                3,
                Box::new(row_g_l(t)),
                pick(c(-2.0 * pi.powi(3) / (3.0 * r3)), ci(2.0 * pi.powi(3) / 27.0)),
                if e { "-2pi^3/(3sqrt3)" } else { "2i pi^3/27" },
            ));
        }
    }
    rows.into_iter()
        .map(|(label, weight, f, expected, expected_text)| {
            Ok(CuspRow {
                label,
                weight,
                value: slash_value(&*f, weight, cusp.matrix(), height)?,
                expected,
                expected_text,
            })
        })
        .collect()
}
