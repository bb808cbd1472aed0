//! Exact formal Laurent solutions of the Hamilton system
//! `dx/dz = dF/dy, dy/dz = -dF/dx` on the energy level `F(x, y, g) = 0`.
//!
//! Each point at infinity fixes the leading terms. The remaining
//! coefficients are found step by step: at each step the pair of new
//! coefficients enters the two Hamilton equations linearly through a constant
//! 2x2 matrix. Where that matrix is singular, the free direction is fixed by
//! the energy constraint, in which g_l appears linearly.

mod poly;
mod reference;
mod series;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

pub use poly::{rat, GradedPoly};
pub use reference::{RefTerm, Reference, REFERENCES};
pub use series::{Series, EXACT};

use crate::curve_family::{CurveType, Rat};
use crate::error::{Error, Result};
use crate::C64;

pub const DEFAULT_ORDER: i32 = 16;

/// Which Hamilton row is paired with the energy equation at a singular step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EliminationOrder {
    #[default]
    XFirst,
    YFirst,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FormalSolution {
    pub ty: CurveType,
    pub infinity: usize,
    pub order: i32,
    pub x: BTreeMap<i32, GradedPoly>,
    pub y: BTreeMap<i32, GradedPoly>,
    /// Determinant of the Hamilton system at each step, keyed by the x power.
    pub step_determinants: BTreeMap<i32, BigRational>,
}

/// Leading data of one point at infinity.
struct Branch {
    x_lead: Option<(i32, BigRational)>,
    y_lead: (i32, BigRational),
    x_lo: i32,
    y_lo: i32,
    first_step: i32,
    step: i32,
    y_offset: i32,
}

fn branch(t: CurveType, infinity: usize) -> Result<Branch> {
    let n = t.level() as usize;
    if infinity < 1 || infinity > n {
        return Err(Error::OutOfRange(format!("{t} has points at infinity 1..={n}, got {infinity}")));
    }
    let b = match (t, infinity) {
        (CurveType::A2, _) => Branch {
            x_lead: Some((-2, rat(1, 4))),
            y_lead: (-3, rat(-1, 4)),
            x_lo: -2,
            y_lo: -3,
            first_step: 0,
            step: 2,
            y_offset: -1,
        },
        (CurveType::B2, i) => {
            let s = if i == 1 { 1 } else { -1 };
            Branch {
                x_lead: Some((-1, rat(s, 2))),
                y_lead: (-2, rat(-s, 4)),
                x_lo: -1,
                y_lo: -2,
                first_step: 1,
                step: 2,
                y_offset: -1,
            }
        }
        (CurveType::G2, 3) => Branch {
            x_lead: None,
            y_lead: (-1, rat(1, 1)),
            x_lo: 0,
            y_lo: -1,
            first_step: 0,
            step: 1,
            y_offset: 0,
        },
        (CurveType::G2, i) => Branch {
            x_lead: Some((-1, rat(if i == 1 { 1 } else { -1 }, 2))),
            y_lead: (-1, rat(-1, 2)),
            x_lo: -1,
            y_lo: -1,
            first_step: 0,
            step: 1,
            y_offset: 0,
        },
    };
    Ok(b)
}

fn consts(t: CurveType) -> (Series, Series) {
    (Series::constant(GradedPoly::g_s(t)), Series::constant(GradedPoly::g_l(t)))
}

fn c(n: i64) -> BigRational {
    rat(n, 1)
}

/// F(x, y, g) on series.
pub fn energy_series(t: CurveType, x: &Series, y: &Series) -> Series {
    let (s, l) = consts(t);
    let y2 = y.mul(y);
    match t {
        CurveType::A2 => {
            let x3 = x.mul(x).mul(x);
            y2.sub(&x3.scale(&c(4))).add(&s.mul(x)).add(&l)
        }
        CurveType::B2 => {
            let x2 = x.mul(x);
            let x4 = x2.mul(&x2);
            let s2 = s.mul(&s).scale(&rat(1, 8));
            y2.sub(&x4).add(&s.mul(&x2)).sub(&l).sub(&s2)
        }
        CurveType::G2 => {
            let x2 = x.mul(x);
            let s3 = s.mul(&s).mul(&s).scale(&c(2));
            x.mul(&y2)
                .sub(&x2.mul(x))
                .add(&s.mul(&x2.scale(&c(3)).add(&y2)))
                .sub(&l)
                .sub(&s3)
        }
    }
}

/// (dF/dx, dF/dy) on series.
pub fn gradient_series(t: CurveType, x: &Series, y: &Series) -> (Series, Series) {
    let (s, _) = consts(t);
    match t {
        CurveType::A2 => (x.mul(x).scale(&c(-12)).add(&s), y.scale(&c(2))),
        CurveType::B2 => (
            x.mul(x).mul(x).scale(&c(-4)).add(&s.mul(x).scale(&c(2))),
            y.scale(&c(2)),
        ),
        CurveType::G2 => (
            y.mul(y).sub(&x.mul(x).scale(&c(3))).add(&s.mul(x).scale(&c(6))),
            x.mul(y).add(&s.mul(y)).scale(&c(2)),
        ),
    }
}

/// The Hamilton residuals dx/dz - dF/dy and dy/dz + dF/dx.
pub fn hamilton_series(t: CurveType, x: &Series, y: &Series) -> (Series, Series) {
    let (fx, fy) = gradient_series(t, x, y);
    (x.derivative().sub(&fy), y.derivative().add(&fx))
}

fn with_term(s: &Series, power: i32, p: &GradedPoly, step: i32) -> Series {
    let mut out = s.clone();
    out.set(power, &out.coeff(power) + p);
    out.prec = power + step;
    out
}

fn constant_of(p: &GradedPoly, what: &str) -> Result<BigRational> {
    p.as_constant()
        .ok_or_else(|| Error::Inconsistency(format!("{what} depends on the parameters: {p}")))
}

fn coeff_checked(s: &Series, power: i32) -> Result<GradedPoly> {
    if power >= s.prec {
        return Err(Error::Inconsistency(format!(
            "coefficient {power} requested beyond precision {}",
            s.prec
        )));
    }
    Ok(s.coeff(power))
}

/// Expected weight of the z^n coefficient of x (or y).
fn coefficient_weight(t: CurveType, for_y: bool, n: i32) -> Rat {
    let w = t.weights();
    let base = if for_y { w.y } else { w.x };
    base - w.z * n as i64
}

pub fn solve_formal(t: CurveType, infinity: usize, order: i32) -> Result<FormalSolution> {
    solve_formal_with(t, infinity, order, EliminationOrder::XFirst)
}

pub fn solve_formal_with(
    t: CurveType,
    infinity: usize,
    order: i32,
    elim: EliminationOrder,
) -> Result<FormalSolution> {
    let b = branch(t, infinity)?;
    if order < 0 {
        return Err(Error::OutOfRange(format!("order {order} must be nonnegative")));
    }
    let mut x = Series::new(t, b.x_lo, b.first_step);
    let mut y = Series::new(t, b.y_lo, b.first_step + b.y_offset);
    if let Some((p, v)) = &b.x_lead {
        x.set(*p, GradedPoly::constant(t, v.clone()));
    }
    y.set(b.y_lead.0, GradedPoly::constant(t, b.y_lead.1.clone()));

    let zero = GradedPoly::zero(t);
    let one = GradedPoly::constant(t, BigRational::one());
    let two = GradedPoly::constant(t, rat(2, 1));
    let mut dets = BTreeMap::new();
    let mut k = b.first_step;
    while k + b.y_offset <= order {
        let (px, py) = (k, k + b.y_offset);
        let trial = |xv: &GradedPoly, yv: &GradedPoly| -> (Series, Series) {
            (with_term(&x, px, xv, b.step), with_term(&y, py, yv, b.step))
        };
        let hamilton = |xv: &GradedPoly, yv: &GradedPoly| -> Result<(GradedPoly, GradedPoly)> {
            let (xs, ys) = trial(xv, yv);
            let (hx, hy) = hamilton_series(t, &xs, &ys);
            Ok((coeff_checked(&hx, px - 1)?, coeff_checked(&hy, py - 1)?))
        };
        let energy = |xv: &GradedPoly, yv: &GradedPoly| -> Result<GradedPoly> {
            let (xs, ys) = trial(xv, yv);
            coeff_checked(&energy_series(t, &xs, &ys), 0)
        };
        let r0 = hamilton(&zero, &zero)?;
        let ra = hamilton(&one, &zero)?;
        let rb = hamilton(&zero, &one)?;
        let ra2 = hamilton(&two, &zero)?;
        let rb2 = hamilton(&zero, &two)?;
        let lin = |r1: &(GradedPoly, GradedPoly), r2: &(GradedPoly, GradedPoly)| -> Result<(BigRational, BigRational)> {
            let d1 = (&r1.0 - &r0.0, &r1.1 - &r0.1);
            let d2 = (&r2.0 - &r0.0, &r2.1 - &r0.1);
            if d2.0 != d1.0.scale(&rat(2, 1)) || d2.1 != d1.1.scale(&rat(2, 1)) {
                return Err(Error::Inconsistency(format!("step {k} is not linear in the unknowns")));
            }
            Ok((constant_of(&d1.0, "recurrence matrix")?, constant_of(&d1.1, "recurrence matrix")?))
        };
        let (mxa, mya) = lin(&ra, &ra2)?;
        let (mxb, myb) = lin(&rb, &rb2)?;
        let det = &mxa * &myb - &mxb * &mya;
        dets.insert(px, det.clone());
        let (xv, yv) = if !det.is_zero() {
            // M [X; Y] = -[r0x; r0y]
            let xv = (&r0.1.scale(&mxb) - &r0.0.scale(&myb)).scale(&det.recip());
            let yv = (&r0.0.scale(&mya) - &r0.1.scale(&mxa)).scale(&det.recip());
            (xv, yv)
        } else {
            let e0 = energy(&zero, &zero)?;
            let ea = constant_of(&(&energy(&one, &zero)? - &e0), "energy coefficient")?;
            let eb = constant_of(&(&energy(&zero, &one)? - &e0), "energy coefficient")?;
            let x_row = (mxa.clone(), mxb.clone(), r0.0.clone());
            let y_row = (mya.clone(), myb.clone(), r0.1.clone());
            let nonzero = |r: &(BigRational, BigRational, GradedPoly)| !(r.0.is_zero() && r.1.is_zero());
            let prefer_x = match elim {
                EliminationOrder::XFirst => nonzero(&x_row),
                EliminationOrder::YFirst => !nonzero(&y_row),
            };
            let (row, other) = if prefer_x { (x_row, y_row) } else { (y_row, x_row) };
            let d = &row.0 * &eb - &row.1 * &ea;
            if d.is_zero() {
                return Err(Error::Inconsistency(format!(
                    "energy constraint does not fix step {k} of {t} infinity {infinity}"
                )));
            }
            let xv = (&e0.scale(&row.1) - &row.2.scale(&eb)).scale(&d.recip());
            let yv = (&row.2.scale(&ea) - &e0.scale(&row.0)).scale(&d.recip());
            let check = &(&other.2 + &xv.scale(&other.0)) + &yv.scale(&other.1);
            if !check.is_zero() {
                return Err(Error::Inconsistency(format!(
                    "singular step {k} of {t} infinity {infinity} is inconsistent"
                )));
            }
            (xv, yv)
        };
        for (p, v, for_y) in [(px, &xv, false), (py, &yv, true)] {
            if !v.is_homogeneous_of(coefficient_weight(t, for_y, p)) {
                return Err(Error::Inconsistency(format!("coefficient of z^{p} is not homogeneous: {v}")));
            }
        }
        x = with_term(&x, px, &xv, b.step);
        y = with_term(&y, py, &yv, b.step);
        k += b.step;
    }
    let keep = |s: &Series| -> BTreeMap<i32, GradedPoly> {
        s.known()
            .filter(|(p, v)| **p <= order && !v.is_zero())
            .map(|(p, v)| (*p, v.clone()))
            .collect()
    };
    Ok(FormalSolution { ty: t, infinity, order, x: keep(&x), y: keep(&y), step_determinants: dets })
}

/// Determinant of the linear system for the n-th coefficient pair (A_n, B_n)
/// in the recurrence `M (A_n, B_n) = remainder`, with
/// M = [[2n, -2], [-6, 2n-1]], [[2n+1, -2], [-3, 2n]], [[n+1, -1], [-3, n-1]].
/// It vanishes exactly at the energy step.
pub fn recurrence_determinant(t: CurveType, n: i64) -> i64 {
    match t {
        CurveType::A2 => 2 * (2 * n + 3) * (n - 2),
        CurveType::B2 => 2 * (2 * n + 3) * (n - 1),
        CurveType::G2 => (n + 2) * (n - 2),
    }
}

impl FormalSolution {
    fn series(&self, for_y: bool) -> Series {
        let b = branch(self.ty, self.infinity).expect("valid branch");
        let lo = if for_y { b.y_lo } else { b.x_lo };
        let mut s = Series::new(self.ty, lo, self.order + 1);
        let map = if for_y { &self.y } else { &self.x };
        for (p, v) in map {
            s.set(*p, v.clone());
        }
        s
    }

    pub fn x_series(&self) -> Series {
        self.series(false)
    }

    pub fn y_series(&self) -> Series {
        self.series(true)
    }

    pub fn x_coeff(&self, power: i32) -> GradedPoly {
        self.x.get(&power).cloned().unwrap_or_else(|| GradedPoly::zero(self.ty))
    }

    pub fn y_coeff(&self, power: i32) -> GradedPoly {
        self.y.get(&power).cloned().unwrap_or_else(|| GradedPoly::zero(self.ty))
    }

    /// Truncated x and y at a numerical point.
    pub fn eval(&self, z: C64, g_s: C64, g_l: C64) -> (C64, C64) {
        let sum = |m: &BTreeMap<i32, GradedPoly>| -> C64 {
            m.iter().map(|(p, v)| v.eval(g_s, g_l) * z.powi(*p)).sum()
        };
        (sum(&self.x), sum(&self.y))
    }

    /// Applies the automorphism sigma to (x, y) termwise.
    pub fn apply_sigma(&self) -> (BTreeMap<i32, GradedPoly>, BTreeMap<i32, GradedPoly>) {
        let powers: Vec<i32> = self.x.keys().chain(self.y.keys()).copied().collect();
        let mut nx = BTreeMap::new();
        let mut ny = BTreeMap::new();
        for p in powers {
            let (xv, yv) = (self.x_coeff(p), self.y_coeff(p));
            let (a, b) = match self.ty {
                CurveType::A2 => (xv, yv),
                CurveType::B2 => (-&xv, -&yv),
                CurveType::G2 => (
                    (&yv - &xv).scale(&rat(1, 2)),
                    (&xv.scale(&rat(-3, 1)) - &yv).scale(&rat(1, 2)),
                ),
            };
            if !a.is_zero() {
                nx.insert(p, a);
            }
            if !b.is_zero() {
                ny.insert(p, b);
            }
        }
        (nx, ny)
    }

    /// CSV with columns series,power,monomial,numerator,denominator.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("series,power,monomial,numerator,denominator\n");
        for (name, map) in [("x", &self.x), ("y", &self.y)] {
            for (p, v) in map {
                for (&(i, j), c) in v.terms() {
                    let _ = writeln!(
                        out,
                        "{name},{p},{},{},{}",
                        GradedPoly::monomial_name(i, j),
                        c.numer(),
                        c.denom()
                    );
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let conv = |map: &BTreeMap<i32, GradedPoly>| -> Value {
            Value::Array(
                map.iter()
                    .map(|(p, v)| {
                        let terms: Vec<Value> = v
                            .terms()
                            .map(|(&(i, j), c)| {
                                json!({
                                    "monomial": GradedPoly::monomial_name(i, j),
                                    "coefficient": format!("{}/{}", c.numer(), c.denom()),
                                })
                            })
                            .collect();
                        json!({ "power": p, "terms": terms })
                    })
                    .collect(),
            )
        };
        json!({
            "type": self.ty.name(),
            "infinity": self.infinity,
            "order": self.order,
            "x": conv(&self.x),
            "y": conv(&self.y),
        })
    }
}

/// One compared coefficient of the published table.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ReferenceMatch {
    pub ty: CurveType,
    pub infinity: usize,
    pub series: char,
    pub power: i32,
    pub expected: String,
    pub computed: String,
    pub matches: bool,
}

/// Compares a solution against the published coefficients of its branch.
pub fn compare_reference(sol: &FormalSolution) -> Vec<ReferenceMatch> {
    let Some(r) = REFERENCES.iter().find(|r| r.ty == sol.ty && r.infinity == sol.infinity) else {
        return Vec::new();
    };
    r.terms
        .iter()
        .filter(|(_, p, _)| *p <= sol.order)
        .map(|&(series, power, terms)| {
            let expected = GradedPoly::from_terms(
                sol.ty,
                terms.iter().map(|&(i, j, n, d)| ((i, j), rat(n, d))),
            );
            let computed = if series == 'x' { sol.x_coeff(power) } else { sol.y_coeff(power) };
            ReferenceMatch {
                ty: sol.ty,
                infinity: sol.infinity,
                series,
                power,
                matches: expected == computed,
                expected: expected.to_string(),
                computed: computed.to_string(),
            }
        })
        .collect()
}

/// Residual series of a solution: Hamilton x, Hamilton y, energy.
#[derive(Debug, Clone)]
pub struct Residuals {
    pub hamilton_x: Series,
    pub hamilton_y: Series,
    pub energy: Series,
}

impl Residuals {
    pub fn all_zero(&self) -> bool {
        self.hamilton_x.is_zero_to_prec() && self.hamilton_y.is_zero_to_prec() && self.energy.is_zero_to_prec()
    }
}

pub fn residual_check(sol: &FormalSolution) -> Residuals {
    let (x, y) = (sol.x_series(), sol.y_series());
    let (hx, hy) = hamilton_series(sol.ty, &x, &y);
    Residuals { hamilton_x: hx, hamilton_y: hy, energy: energy_series(sol.ty, &x, &y) }
}

/// Parses "num/den" or an integer into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Domain(format!("bad rational {s:?}"));
    let mut it = s.split('/');
    let n: BigInt = it.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let d: BigInt = match it.next() {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if d.is_zero() || it.next().is_some() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: CurveType, terms: &[((u32, u32), (i64, i64))]) -> GradedPoly {
        GradedPoly::from_terms(t, terms.iter().map(|&(k, (n, d))| (k, rat(n, d))))
    }

    #[test]
    fn a2_leading_terms() {
        let t = CurveType::A2;
        let s = solve_formal(t, 1, 8).unwrap();
        assert_eq!(s.x_coeff(-2), p(t, &[((0, 0), (1, 4))]));
        assert_eq!(s.x_coeff(2), p(t, &[((1, 0), (1, 5))]));
        assert_eq!(s.x_coeff(4), p(t, &[((0, 1), (4, 7))]));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(recurrence_determinant(CurveType::A2, 3), 18);
        assert_eq!(recurrence_determinant(CurveType::B2, 2), 14);
        assert_eq!(recurrence_determinant(CurveType::B2, 1), 0);
        assert_eq!(recurrence_determinant(CurveType::G2, 2), 0);
    }

    #[test]
    fn residuals_vanish() {
        for (t, i, o) in [(CurveType::A2, 1, 12), (CurveType::G2, 2, 10), (CurveType::B2, 2, 9)] {
            let s = solve_formal(t, i, o).unwrap();
            assert!(residual_check(&s).all_zero(), "{t} {i}");
        }
    }

    #[test]
    fn perturbation_detected() {
        let mut s = solve_formal(CurveType::B2, 1, 9).unwrap();
        let v = s.x_coeff(3);
        s.x.insert(3, -&v);
        assert!(!residual_check(&s).all_zero());
    }

    #[test]
    fn bad_infinity() {
        assert!(solve_formal(CurveType::A2, 2, 8).is_err());
        assert!(solve_formal(CurveType::G2, 0, 8).is_err());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-4/5").unwrap(), rat(-4, 5));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert!(parse_rational("1/0").is_err());
    }
}
