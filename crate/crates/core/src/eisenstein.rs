//! Classical and shifted Eisenstein series and the Laurent coefficients of
//! the inverse functions.
//!
//! For a torsion point `a` off the lattice,
//! `G_m(a) = sum (omega + a)^-m = wp^(m-2)(-a) / (m-1)!`, and
//! `G_m(0) = sum' omega^-m`.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::curve_family::{CurveType, Rat};
use crate::elliptic_kernel::{FramedPeriods, Lattice};
use crate::error::{Error, Result};
use crate::modular_group::Mat2Z;
use crate::C64;

/// A torsion point a = r0 omega0 + r1 omega1 with r_i in [0, 1) and
/// denominators dividing 6.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShiftPoint {
    pub r0: Rat,
    pub r1: Rat,
}

fn reduce_unit(r: Rat) -> Rat {
    r - r.floor()
}

impl ShiftPoint {
    pub const ZERO: ShiftPoint = ShiftPoint { r0: Ratio::new_raw(0, 1), r1: Ratio::new_raw(0, 1) };

    pub fn new(r0: Rat, r1: Rat) -> Result<Self> {
        for r in [r0, r1] {
            if 6 % r.denom() != 0 {
                return Err(Error::Domain(format!("shift {r} must have denominator 1, 2 or 3")));
            }
        }
        Ok(ShiftPoint { r0: reduce_unit(r0), r1: reduce_unit(r1) })
    }

    /// The point r * omega0.
    pub fn along_omega0(num: i64, den: i64) -> Self {
        Self::new(Rat::new(num, den), Rat::zero()).expect("valid shift")
    }

    pub fn is_zero(&self) -> bool {
        self.r0.is_zero() && self.r1.is_zero()
    }

    pub fn negate(&self) -> Self {
        ShiftPoint { r0: reduce_unit(-self.r0), r1: reduce_unit(-self.r1) }
    }

    pub fn point(&self, w: &FramedPeriods) -> C64 {
        w.omega0 * to_f64(self.r0) + w.omega1 * to_f64(self.r1)
    }
}

impl FromStr for ShiftPoint {
    type Err = Error;
    /// Parses "r0,r1" with rationals like "1/3".
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(Error::Domain(format!("shift {s:?} must be r0,r1")));
        }
        let parse = |p: &str| -> Result<Rat> {
            p.parse::<Rat>().map_err(|_| Error::Domain(format!("bad rational {p:?}")))
        };
        ShiftPoint::new(parse(parts[0])?, parse(parts[1])?)
    }
}

impl fmt::Display for ShiftPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.r0, self.r1)
    }
}

fn to_f64(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// G_m(a) for m >= 3.
pub fn eisenstein_g_lattice(m: u32, a: ShiftPoint, lat: &Lattice) -> Result<C64> {
    if m < 3 {
        return Err(Error::UnsupportedWeight(m as i64));
    }
    if a.is_zero() {
        return lat.eisenstein_zero(m);
    }
    let z = -a.point(lat.frame());
    Ok(lat.wp_derivative(m - 2, z)? / factorial(m - 1))
}

#[allow(non_snake_case)]
pub fn eisenstein_G(m: u32, a: ShiftPoint, w: &FramedPeriods) -> Result<C64> {
    eisenstein_g_lattice(m, a, &Lattice::new(w)?)
}

/// Building blocks of the coefficient evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Term {
    /// G_m(a).
    G { m: u32, #[serde(skip)] shift: ShiftPoint },
    /// wp(a).
    Wp(#[serde(skip)] ShiftPoint),
    /// zeta at the literal point a (not reduced modulo the lattice).
    Zeta(#[serde(skip)] ShiftPoint),
}

impl Term {
    fn eval(&self, lat: &Lattice) -> Result<C64> {
        match *self {
            Term::G { m, shift } => eisenstein_g_lattice(m, shift, lat),
            Term::Wp(a) => lat.wp(a.point(lat.frame())),
            Term::Zeta(a) => lat.zeta(a.point(lat.frame())),
        }
    }
}

/// A rational linear combination of [`Term`]s, homogeneous of weight
/// `weight` in the frame: f(s w) = s^-weight f(w).
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluator {
    pub terms: Vec<(Rat, Term)>,
    pub weight: i32,
}

impl Evaluator {
    fn single(c: Rat, t: Term, weight: i32) -> Self {
        Evaluator { terms: vec![(c, t)], weight }
    }

    pub fn eval_lattice(&self, lat: &Lattice) -> Result<C64> {
        let mut acc = C64::zero();
        for (c, t) in &self.terms {
            if !c.is_zero() {
                acc += t.eval(lat)? * to_f64(*c);
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, w: &FramedPeriods) -> Result<C64> {
        self.eval_lattice(&Lattice::new(w)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exceptional {
    /// wp(omega0/2), weight 2, type B2.
    PHalf,
    /// wp(omega0/3), weight 2, type G2.
    PThird,
    /// zeta(omega0/3) - 2/3 zeta(omega0/2), weight 1, type G2.
    ZetaCombo,
}

impl Exceptional {
    pub fn name(self) -> &'static str {
        match self {
            Exceptional::PHalf => "p_half",
            Exceptional::PThird => "p_third",
            Exceptional::ZetaCombo => "zeta_combo",
        }
    }

    pub fn evaluator(self) -> Evaluator {
        let half = ShiftPoint::along_omega0(1, 2);
        let third = ShiftPoint::along_omega0(1, 3);
        match self {
            Exceptional::PHalf => Evaluator::single(Rat::one(), Term::Wp(half), 2),
            Exceptional::PThird => Evaluator::single(Rat::one(), Term::Wp(third), 2),
            Exceptional::ZetaCombo => Evaluator {
                terms: vec![(Rat::one(), Term::Zeta(third)), (Rat::new(-2, 3), Term::Zeta(half))],
                weight: 1,
            },
        }
    }
}

/// The low-weight series replacing non-absolutely convergent sums.
pub fn exceptional_series(t: CurveType, name: &str) -> Result<Evaluator> {
    let e = match (t, name) {
        (CurveType::B2, "p_half") => Exceptional::PHalf,
        (CurveType::G2, "p_third") => Exceptional::PThird,
        (CurveType::G2, "zeta_combo") => Exceptional::ZetaCombo,
        _ => {
            return Err(Error::UnknownSeries { name: name.to_string(), ty: t.to_string() })
        }
    };
    Ok(e.evaluator())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Which {
    A,
    B,
}

/// Power of z carried by A_n (in x) or B_n (in y) in the expansion at z = 0.
pub fn coefficient_power(t: CurveType, which: Which, n: i32) -> i32 {
    match (t, which) {
        (CurveType::A2, Which::A) => 2 * n,
        (CurveType::A2, Which::B) => 2 * n - 1,
        (CurveType::B2, Which::A) => 2 * n + 1,
        (CurveType::B2, Which::B) => 2 * n,
        (CurveType::G2, _) => n,
    }
}

/// Frame weight of x (Which::A) or y (Which::B).
fn function_weight(t: CurveType, which: Which) -> i32 {
    match (t, which) {
        (CurveType::A2, Which::A) => 2,
        (CurveType::A2, Which::B) => 3,
        (CurveType::B2, Which::A) => 1,
        (CurveType::B2, Which::B) => 2,
        (CurveType::G2, _) => 1,
    }
}

/// Evaluator of the Laurent coefficient A_n of x or B_n of y at z = 0.
pub fn series_coefficient(t: CurveType, which: Which, n: i32) -> Result<Evaluator> {
    let min = if t == CurveType::A2 { 1 } else { 0 };
    if n < min {
        return Err(Error::OutOfRange(format!("{t} coefficient index {n} < {min}")));
    }
    let weight = function_weight(t, which) + coefficient_power(t, which, n);
    let r = Rat::new;
    let zero = ShiftPoint::ZERO;
    let g = |m: i32, shift| Term::G { m: m as u32, shift };
    let terms = match t {
        CurveType::A2 => {
            let m = 2 * n + 2;
            let c = match which {
                Which::A => r((2 * n + 1) as i64, 4),
                Which::B => r(((2 * n + 1) * n) as i64, 4),
            };
            vec![(c, g(m, zero))]
        }
        CurveType::B2 => {
            let half = ShiftPoint::along_omega0(1, 2);
            match (which, n) {
                (Which::A, 0) => vec![(r(1, 2), Term::Wp(half))],
                (Which::B, 0) => vec![(r(1, 4), Term::Wp(half))],
                (Which::A, _) => {
                    let m = 2 * n + 2;
                    vec![(r(-1, 2), g(m, zero)), (r(1, 2), g(m, half))]
                }
                (Which::B, _) => {
                    let m = 2 * n + 2;
                    let c = r((2 * n + 1) as i64, 4);
                    vec![(-c, g(m, zero)), (c, g(m, half))]
                }
            }
        }
        CurveType::G2 => {
            let third = ShiftPoint::along_omega0(1, 3);
            let two_thirds = ShiftPoint::along_omega0(2, 3);
            match (which, n) {
                (Which::A, 0) => vec![(r(1, 3), Term::Zeta(third)), (r(-1, 6), Term::Zeta(two_thirds))],
                (Which::A, 1) => vec![(r(1, 2), Term::Wp(third))],
                (Which::A, _) => vec![(r(-1, 2), g(n + 1, zero)), (r(1, 2), g(n + 1, third))],
                (Which::B, 0) => vec![(r(1, 1), Term::Zeta(third)), (r(-1, 2), Term::Zeta(two_thirds))],
                (Which::B, 1) => vec![(r(-1, 2), Term::Wp(third))],
                (Which::B, _) => {
                    let sign = if n % 2 == 0 { 1 } else { -1 };
                    vec![(r(1, 2), g(n + 1, zero)), (r(1, 2) + sign, g(n + 1, third))]
                }
            }
        }
    };
    // odd-weight G_m(0) vanish; drop them to keep evaluators minimal
    let terms = terms
        .into_iter()
        .filter(|(_, t)| !matches!(t, Term::G { m, shift } if shift.is_zero() && m % 2 == 1))
        .collect();
    Ok(Evaluator { terms, weight })
}

/// The two cusps used for boundary values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Cusp {
    E,
    S,
}

impl Cusp {
    pub fn matrix(self) -> Mat2Z {
        match self {
            Cusp::E => Mat2Z::IDENTITY,
            Cusp::S => Mat2Z::S,
        }
    }
}

impl FromStr for Cusp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "E" | "e" => Ok(Cusp::E),
            "S" | "s" => Ok(Cusp::S),
            _ => Err(Error::Domain(format!("unknown cusp {s:?}"))),
        }
    }
}

pub const DEFAULT_CUSP_HEIGHT: f64 = 10.0;

/// `((omega0^m f) |_m gamma)(i height)`: with F(tau) = f(1, tau) this is
/// F(gamma tau) (c tau + d)^-m.
pub fn slash_value<F>(f: F, weight: i32, gamma: Mat2Z, height: f64) -> Result<C64>
where
    F: Fn(&FramedPeriods) -> Result<C64>,
{
    let tau = C64::new(0.0, height);
    let image = gamma.mobius(tau);
    let j = tau * gamma.c as f64 + gamma.d as f64;
    Ok(f(&FramedPeriods::from_tau(image))? * j.powi(-weight))
}

pub fn cusp_value(e: &Evaluator, cusp: Cusp, height: f64) -> Result<C64> {
    slash_value(|w| e.eval(w), e.weight, cusp.matrix(), height)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cusp_frame() -> FramedPeriods {
        FramedPeriods::from_tau(C64::new(0.0, 10.0))
    }

    #[test]
    fn examples() {
        let w = cusp_frame();
        assert!(eisenstein_G(3, ShiftPoint::ZERO, &w).unwrap().norm() < 1e-15);
        let g4 = eisenstein_G(4, ShiftPoint::ZERO, &w).unwrap();
        assert!((g4 - PI.powi(4) / 45.0).norm() < 1e-6);
        let g4h = eisenstein_G(4, ShiftPoint::along_omega0(1, 2), &w).unwrap();
        assert!((g4h - PI.powi(4) / 3.0).norm() < 1e-6);
        let g3t = eisenstein_G(3, ShiftPoint::along_omega0(1, 3), &w).unwrap();
        assert!((g3t - 4.0 * PI.powi(3) / (3.0 * 3f64.sqrt())).norm() < 1e-6);
        assert!(matches!(eisenstein_G(2, ShiftPoint::ZERO, &w), Err(Error::UnsupportedWeight(2))));
    }

    #[test]
    fn exceptional_examples() {
        let w = cusp_frame();
        let p = exceptional_series(CurveType::B2, "p_half").unwrap();
        assert!((p.eval(&w).unwrap() - 2.0 * PI * PI / 3.0).norm() < 1e-6);
        let z = exceptional_series(CurveType::G2, "zeta_combo").unwrap();
        assert!((z.eval(&w).unwrap() - PI / 3f64.sqrt()).norm() < 1e-6);
        let zs = cusp_value(&z, Cusp::S, DEFAULT_CUSP_HEIGHT).unwrap();
        assert!((zs - C64::new(0.0, -PI / 3.0)).norm() < 1e-6);
        assert!(exceptional_series(CurveType::A2, "p_half").is_err());
        assert!(exceptional_series(CurveType::G2, "p_half").is_err());
    }

    #[test]
    fn coefficient_examples() {
        let w = FramedPeriods::new(C64::new(1.0, 0.1), C64::new(0.2, 1.3));
        let a1 = series_coefficient(CurveType::A2, Which::A, 1).unwrap().eval(&w).unwrap();
        let g4 = eisenstein_G(4, ShiftPoint::ZERO, &w).unwrap();
        assert!((a1 - 0.75 * g4).norm() < 1e-12 * g4.norm());
        let b0 = series_coefficient(CurveType::B2, Which::B, 0).unwrap().eval(&w).unwrap();
        let ph = crate::elliptic_kernel::wp(w.omega0 / 2.0, &w).unwrap();
        assert!((b0 - 0.25 * ph).norm() < 1e-12 * ph.norm());
        let b1 = series_coefficient(CurveType::G2, Which::B, 1).unwrap().eval(&w).unwrap();
        let pt = crate::elliptic_kernel::wp(w.omega0 / 3.0, &w).unwrap();
        assert!((b1 + 0.5 * pt).norm() < 1e-12 * pt.norm());
        assert!(series_coefficient(CurveType::A2, Which::A, 0).is_err());
    }

    #[test]
    fn slash_examples() {
        let g6 = |w: &FramedPeriods| eisenstein_G(6, ShiftPoint::ZERO, w);
        let v = slash_value(g6, 6, Mat2Z::IDENTITY, 10.0).unwrap();
        assert!((v - 2.0 * PI.powi(6) / 945.0).norm() < 1e-6);
        let g4h = |w: &FramedPeriods| eisenstein_G(4, ShiftPoint::along_omega0(1, 2), w);
        assert!(slash_value(g4h, 4, Mat2Z::S, 10.0).unwrap().norm() < 1e-6);
        let ph = |w: &FramedPeriods| crate::elliptic_kernel::wp(w.omega0 / 2.0, w);
        let v = slash_value(ph, 2, Mat2Z::S, 10.0).unwrap();
        assert!((v + PI * PI / 3.0).norm() < 1e-6);
    }

    #[test]
    fn shift_parsing() {
        let s: ShiftPoint = "1/2,0".parse().unwrap();
        assert_eq!(s, ShiftPoint::along_omega0(1, 2));
        let s: ShiftPoint = "-1/3,4/3".parse().unwrap();
        assert_eq!((s.r0, s.r1), (Rat::new(2, 3), Rat::new(1, 3)));
        assert!("1/5,0".parse::<ShiftPoint>().is_err());
    }
}
