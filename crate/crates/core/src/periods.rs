//! Forward periods g -> (omega0, omega1): damped Newton on the inversion map
//! with moduli-space continuation, and an arithmetic-geometric-mean route for
//! type A2.

use std::f64::consts::PI;

use serde::Serialize;

use crate::curve_family::{discriminant, reduced_discriminant, CurveType, ModuliPoint};
use crate::elliptic_kernel::{FramedPeriods, Lattice};
use crate::error::{Error, Result};
use crate::inversion::{invert_lattice, weighted_norm};
use crate::modular_group::{generators, Mat2Z};
use crate::profile::Profile;
use crate::C64;

const I: C64 = C64::new(0.0, 1.0);
/// Step budget of the continuation path from the anchor.
pub const MAX_CONTINUATION_STEPS: usize = 32;
/// Length bound on the words used for canonical reduction.
pub const MAX_REDUCTION_WORDS: usize = 16;
const DAMPING: f64 = 0.5;
const JACOBIAN_STEP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Newton,
    Agm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeriodResult {
    pub frame: FramedPeriods,
    pub method: Method,
    /// Weighted relative residual of E(frame) against the target.
    pub residual: f64,
    /// True when the frame reached the canonical box.
    pub reduced: bool,
}

/// The anchor frame of the continuation.
pub fn anchor_frame() -> FramedPeriods {
    FramedPeriods::new(C64::new(1.0, 0.0), C64::from_polar(1.0, PI / 3.0))
}

fn moduli(t: CurveType, w: &FramedPeriods) -> Result<ModuliPoint> {
    invert_lattice(t, &Lattice::new(w)?)
}

/// Residual of `got` against `want` with each component measured in units
/// of the weighted size of `want`.
pub fn weighted_residual(want: &ModuliPoint, got: &ModuliPoint) -> f64 {
    let (ms, ml) = want.ty.frame_weights();
    let rho = weighted_norm(want).max(f64::MIN_POSITIVE);
    let es = (got.g_s - want.g_s).norm() / rho.powi(ms);
    let el = (got.g_l - want.g_l).norm() / rho.powi(ml);
    es.max(el)
}

fn check_discriminant(t: CurveType, g: &ModuliPoint) -> Result<()> {
    let delta = discriminant(t, *g).norm();
    let rho = weighted_norm(g);
    if !(rho > 0.0) || delta <= 1e-12 * rho.powi(12) {
        return Err(Error::Discriminant(delta));
    }
    Ok(())
}

/// Complex Jacobian d(g_s, g_l)/d(omega0, omega1) by central differences.
pub fn jacobian(t: CurveType, w: &FramedPeriods) -> Result<[[C64; 2]; 2]> {
    let h = JACOBIAN_STEP * w.omega0.norm().min(w.omega1.norm());
    let mut jac = [[C64::new(0.0, 0.0); 2]; 2];
    for col in 0..2 {
        let shift = |s: f64| {
            let mut v = *w;
            if col == 0 {
                v.omega0 += s * h;
            } else {
                v.omega1 += s * h;
            }
            moduli(t, &v)
        };
        let (p, m) = (shift(1.0)?, shift(-1.0)?);
        jac[0][col] = (p.g_s - m.g_s) / (2.0 * h);
        jac[1][col] = (p.g_l - m.g_l) / (2.0 * h);
    }
    Ok(jac)
}

pub fn jacobian_determinant(t: CurveType, w: &FramedPeriods) -> Result<C64> {
    let j = jacobian(t, w)?;
    Ok(j[0][0] * j[1][1] - j[0][1] * j[1][0])
}

/// The measured constant c in det d(g_s, g_l)/d(omega0, omega1) = c * reduced
/// discriminant.
pub fn jacobian_constant(t: CurveType) -> C64 {
    match t {
        CurveType::A2 => I * (8.0 / (3.0 * PI)),
        CurveType::B2 => I * (-1.0 / (4.0 * PI)),
        CurveType::G2 => I * (-3.0 / (2.0 * PI)),
    }
}

/// Ratio of the numerical Jacobian determinant to the reduced discriminant.
pub fn jacobian_ratio(t: CurveType, w: &FramedPeriods) -> Result<C64> {
    let g = moduli(t, w)?;
    Ok(jacobian_determinant(t, w)? / reduced_discriminant(t, g))
}

/// Newton from `start` towards `target`; `None` when it fails to converge.
fn newton(
    t: CurveType,
    target: &ModuliPoint,
    start: FramedPeriods,
    profile: &Profile,
    trace: &mut Vec<f64>,
) -> Result<Option<(FramedPeriods, f64)>> {
    let mut w = start;
    let mut res = match moduli(t, &w) {
        Ok(g) => weighted_residual(target, &g),
        Err(_) => return Ok(None),
    };
    for _ in 0..profile.newton_max_iter {
        trace.push(res);
        if res <= profile.newton_tol {
            return Ok(Some((w, res)));
        }
        let g = moduli(t, &w)?;
        let j = match jacobian(t, &w) {
            Ok(j) => j,
            Err(_) => return Ok(None),
        };
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if !(det.norm() > 0.0) || !det.norm().is_finite() {
            return Ok(None);
        }
        let (rs, rl) = (target.g_s - g.g_s, target.g_l - g.g_l);
        let d0 = (j[1][1] * rs - j[0][1] * rl) / det;
        let d1 = (j[0][0] * rl - j[1][0] * rs) / det;
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..20 {
            let cand = FramedPeriods::new(w.omega0 + d0 * step, w.omega1 + d1 * step);
            if let Ok(gc) = moduli(t, &cand) {
                let rc = weighted_residual(target, &gc);
                if rc < res {
                    w = cand;
                    res = rc;
                    accepted = true;
                    break;
                }
            }
            step *= DAMPING;
        }
        if !accepted {
            return Ok(None);
        }
    }
    trace.push(res);
    Ok((res <= profile.newton_tol).then_some((w, res)))
}

/// Moduli point obtained by weighted scaling with a positive real factor:
/// E(mu * w) = scale(E(w), mu).
fn weighted_scale(g: &ModuliPoint, mu: f64) -> ModuliPoint {
    let (ms, ml) = g.ty.frame_weights();
    ModuliPoint::new(g.ty, g.g_s * mu.powi(-ms), g.g_l * mu.powi(-ml))
}

/// Follows a path from the anchor to `target` in `steps` pieces.
fn continuation(
    t: CurveType,
    target: &ModuliPoint,
    steps: usize,
    bulge: C64,
    profile: &Profile,
    trace: &mut Vec<f64>,
) -> Result<Option<FramedPeriods>> {
    let anchor = anchor_frame();
    let ga = moduli(t, &anchor)?;
    // Solve at a rescaled target of the anchor's size: if E(v) = local then
    // E(v / f) = target.
    let f = weighted_norm(target) / weighted_norm(&ga);
    let local = weighted_scale(target, f);
    let mut w = anchor;
    for i in 1..=steps {
        let s = i as f64 / steps as f64;
        let path = |x: C64, y: C64| x + (y - x) * s + bulge * s * (1.0 - s) * (y - x).norm();
        let gi = ModuliPoint::new(t, path(ga.g_s, local.g_s), path(ga.g_l, local.g_l));
        if check_discriminant(t, &gi).is_err() {
            return Ok(None);
        }
        let tol = if i == steps { *profile } else { Profile { newton_tol: 1e-6, ..*profile } };
        match newton(t, &gi, w, &tol, trace)? {
            Some((v, _)) => w = v,
            None => return Ok(None),
        }
    }
    Ok(Some(w.scale(C64::new(1.0 / f, 0.0))))
}

/// Reduces a frame by Gamma_1(N) to |Re tau| <= 1/2 with Im tau locally
/// maximal. Returns the frame, the matrix used and whether the search
/// finished within the word budget.
pub fn canonical_reduce(t: CurveType, w: &FramedPeriods) -> (FramedPeriods, Mat2Z, bool) {
    let (a, b) = generators(t);
    let a_inv = a.inverse().expect("generator is unimodular");
    let b_inv = b.inverse().expect("generator is unimodular");
    let mut m = Mat2Z::IDENTITY;
    let mut cur = *w;
    let normalize = |cur: &mut FramedPeriods, m: &mut Mat2Z| {
        let n = cur.tau().re.round() as i64;
        let g = if n >= 0 { b_inv.pow(n as u32) } else { b.pow((-n) as u32) };
        *cur = g.act(cur);
        *m = *m * g;
    };
    normalize(&mut cur, &mut m);
    for _ in 0..MAX_REDUCTION_WORDS {
        let im = cur.tau().im;
        let mut best: Option<(FramedPeriods, Mat2Z, f64)> = None;
        for g in [a, a_inv] {
            let mut c = g.act(&cur);
            let mut mg = m * g;
            normalize(&mut c, &mut mg);
            let ic = c.tau().im;
            if ic > im * (1.0 + 1e-12) && best.as_ref().is_none_or(|b| ic > b.2) {
                best = Some((c, mg, ic));
            }
        }
        match best {
            Some((c, mg, _)) => {
                cur = c;
                m = mg;
            }
            None => return (cur, m, true),
        }
    }
    (cur, m, false)
}

/// Forward periods with the profile from the environment.
pub fn periods_newton(t: CurveType, g: &ModuliPoint, seed: &FramedPeriods) -> Result<PeriodResult> {
    periods_newton_with(t, g, seed, &Profile::from_env())
}

pub fn periods_newton_with(
    t: CurveType,
    g: &ModuliPoint,
    seed: &FramedPeriods,
    profile: &Profile,
) -> Result<PeriodResult> {
    if g.ty != t {
        return Err(Error::Domain(format!("moduli point of type {} used as {t}", g.ty)));
    }
    check_discriminant(t, g)?;
    seed.validate()?;
    let mut trace = Vec::new();
    let mut found = newton(t, g, *seed, profile, &mut trace)?.map(|(w, _)| w);
    if found.is_none() {
        'paths: for bulge in [C64::new(0.0, 0.0), C64::new(0.0, 0.3), C64::new(0.0, -0.3)] {
            let mut steps = 4;
            while steps <= MAX_CONTINUATION_STEPS {
                if let Some(w) = continuation(t, g, steps, bulge, profile, &mut trace)? {
                    found = Some(w);
                    break 'paths;
                }
                steps *= 2;
            }
        }
    }
    let w = match found {
        Some(w) => w,
        None => {
            let residual = trace.last().copied().unwrap_or(f64::INFINITY);
            return Err(Error::Convergence { iterations: trace.len(), residual, trace });
        }
    };
    // Polish the rescaled frame against the original target.
    let w = newton(t, g, w, profile, &mut trace)?.map_or(w, |(v, _)| v);
    let (frame, _, reduced) = canonical_reduce(t, &w);
    let residual = weighted_residual(g, &moduli(t, &frame)?);
    if residual > profile.newton_tol.max(1e-10) {
        return Err(Error::Convergence { iterations: trace.len(), residual, trace });
    }
    Ok(PeriodResult { frame, method: Method::Newton, residual, reduced })
}

/// Arithmetic-geometric mean with the optimal sign choice at each step.
pub fn agm(mut a: C64, mut b: C64) -> C64 {
    for _ in 0..100 {
        let a1 = (a + b) / 2.0;
        let mut b1 = (a * b).sqrt();
        if (a1 - b1).norm() > (a1 + b1).norm() {
            b1 = -b1;
        }
        a = a1;
        b = b1;
        if (a - b).norm() <= 1e-16 * a.norm() {
            break;
        }
    }
    (a + b) / 2.0
}

/// Roots of 4x^3 - g_s x - g_l by Durand-Kerner iteration.
fn cubic_roots(g_s: C64, g_l: C64) -> [C64; 3] {
    let f = |x: C64| x * x * x - g_s / 4.0 * x - g_l / 4.0;
    let scale = g_s.norm().sqrt().max(g_l.norm().cbrt()).max(1e-300);
    let seed = C64::new(0.4, 0.9);
    let mut r = [seed * scale, seed * seed * scale, seed * seed * seed * scale];
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..3 {
            let mut den = C64::new(1.0, 0.0);
            for j in 0..3 {
                if i != j {
                    den *= r[i] - r[j];
                }
            }
            let d = f(r[i]) / den;
            r[i] -= d;
            moved = moved.max(d.norm());
        }
        if moved <= 1e-17 * scale {
            break;
        }
    }
    for x in &mut r {
        for _ in 0..3 {
            let d = 3.0 * *x * *x - g_s / 4.0;
            if d.norm() > 0.0 {
                *x -= f(*x) / d;
            }
        }
    }
    r
}

/// The periods of dx/(2y) on y^2 = 4x^3 - g_s x - g_l from the roots of the
/// cubic. The period lattice is that of wp with invariants (16 g_s, 64 g_l).
pub fn periods_agm_a2(g: &ModuliPoint) -> Result<PeriodResult> {
    if g.ty != CurveType::A2 {
        return Err(Error::Domain(format!("the AGM route needs type A2, got {}", g.ty)));
    }
    check_discriminant(CurveType::A2, g)?;
    let [e1, e2, e3] = cubic_roots(g.g_s, g.g_l).map(|x| x * 4.0);
    let a = (e1 - e3).sqrt();
    let mut b = (e1 - e2).sqrt();
    let mut c = (e2 - e3).sqrt();
    if (a + b).norm() < (a - b).norm() {
        b = -b;
    }
    if (a + c).norm() < (a - c).norm() {
        c = -c;
    }
    let w0 = PI / agm(a, b);
    let mut w1 = I * PI / agm(a, c);
    if (w1 / w0).im < 0.0 {
        w1 = -w1;
    }
    let (frame, _, reduced) = canonical_reduce(CurveType::A2, &FramedPeriods::new(w0, w1));
    let residual = weighted_residual(g, &moduli(CurveType::A2, &frame)?);
    Ok(PeriodResult { frame, method: Method::Agm, residual, reduced })
}
