//! Integer 2x2 matrices, monodromy generators and the congruence group.
//!
//! Matrices act on frames from the right, as on row vectors:
//! `(w0', w1') = (w0, w1) * M`, so `w0' = a w0 + c w1` and `w1' = b w0 + d w1`.
//! A word `L1 L2 ... Ln` evaluates to the product `L1 * L2 * ... * Ln`; acting on
//! a frame it applies `L1` first.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::curve_family::CurveType;
use crate::elliptic_kernel::FramedPeriods;
use crate::error::{Error, Result};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2Z {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2Z {
    pub const IDENTITY: Mat2Z = Mat2Z::new(1, 0, 0, 1);
    pub const MINUS_IDENTITY: Mat2Z = Mat2Z::new(-1, 0, 0, -1);
    /// The involution S with tau -> -1/tau.
    pub const S: Mat2Z = Mat2Z::new(0, -1, 1, 0);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2Z { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> Result<Mat2Z> {
        match self.det() {
            1 => Ok(Mat2Z::new(self.d, -self.b, -self.c, self.a)),
            det => Err(Error::NotUnimodular(det)),
        }
    }

    pub fn pow(&self, n: u32) -> Mat2Z {
        (0..n).fold(Mat2Z::IDENTITY, |acc, _| acc * *self)
    }

    /// Right action on a frame.
    pub fn act(&self, w: &FramedPeriods) -> FramedPeriods {
        FramedPeriods {
            omega0: w.omega0 * self.a as f64 + w.omega1 * self.c as f64,
            omega1: w.omega0 * self.b as f64 + w.omega1 * self.d as f64,
        }
    }

    /// Moebius action on the upper half-plane.
    pub fn mobius(&self, tau: C64) -> C64 {
        (tau * self.a as f64 + self.b as f64) / (tau * self.c as f64 + self.d as f64)
    }
}

impl Mul for Mat2Z {
    type Output = Mat2Z;
    fn mul(self, o: Mat2Z) -> Mat2Z {
        Mat2Z::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl fmt::Display for Mat2Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];

    pub fn exponent(self) -> i32 {
        match self {
            Letter::A | Letter::B => 1,
            Letter::AInv | Letter::BInv => -1,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupWord(pub Vec<Letter>);

impl GroupWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        GroupWord(letters)
    }

    /// Alternating word A B A ... of the given length.
    pub fn alternating(len: usize) -> Self {
        GroupWord(
            (0..len)
                .map(|i| if i % 2 == 0 { Letter::A } else { Letter::B })
                .collect(),
        )
    }

    pub fn repeat(&self, n: usize) -> Self {
        GroupWord(self.0.iter().copied().cycle().take(self.0.len() * n).collect())
    }

    pub fn evaluate(&self, t: CurveType) -> Mat2Z {
        let (a, b) = generators(t);
        let (ai, bi) = (a.inverse().unwrap(), b.inverse().unwrap());
        self.0.iter().fold(Mat2Z::IDENTITY, |acc, l| {
            acc * match l {
                Letter::A => a,
                Letter::AInv => ai,
                Letter::B => b,
                Letter::BInv => bi,
            }
        })
    }
}

/// Monodromy images A of the first generator and B of the second.
pub fn generators(t: CurveType) -> (Mat2Z, Mat2Z) {
    (Mat2Z::new(1, 0, -t.level(), 1), Mat2Z::new(1, 1, 0, 1))
}

/// Membership in Gamma_1(N): c = 0 and a = d = 1 modulo N.
pub fn is_in_gamma1(t: CurveType, m: &Mat2Z) -> Result<bool> {
    if m.det() != 1 {
        return Err(Error::NotUnimodular(m.det()));
    }
    let n = t.level();
    Ok(m.c.rem_euclid(n) == 0 && (m.a - 1).rem_euclid(n) == 0 && (m.d - 1).rem_euclid(n) == 0)
}

/// Image of the fundamental element: the alternating word of length p.
pub fn fundamental_element(t: CurveType) -> Mat2Z {
    GroupWord::alternating(t.p() as usize).evaluate(t)
}

/// The character sending both generators to exp(pi i / k).
pub fn character_theta(t: CurveType, w: &GroupWord) -> C64 {
    let e: i32 = w.0.iter().map(|l| l.exponent()).sum();
    C64::from_polar(1.0, std::f64::consts::PI * e as f64 / t.k() as f64)
}

pub const DEFAULT_EQUIVALENCE_TOL: f64 = 1e-8;

fn real_coords(w: &FramedPeriods, target: C64) -> (f64, f64) {
    // target = a*omega0 + c*omega1 with real a, c
    let (p, q) = (w.omega0, w.omega1);
    let det = p.re * q.im - q.re * p.im;
    let a = (target.re * q.im - q.re * target.im) / det;
    let c = (p.re * target.im - target.re * p.im) / det;
    (a, c)
}

/// Finds M in Gamma_1(N) with `w2 = M.act(w1)` up to `tol` (relative to the
/// frame size), or `None` when the frames are not equivalent.
pub fn frame_equivalence(
    t: CurveType,
    w1: &FramedPeriods,
    w2: &FramedPeriods,
    tol: f64,
) -> Result<Option<Mat2Z>> {
    for w in [w1, w2] {
        let im_tau = w.tau().im;
        if !(im_tau.abs() >= tol) || !im_tau.is_finite() {
            return Err(Error::DegenerateFrame { im_tau });
        }
    }
    let (a, c) = real_coords(w1, w2.omega0);
    let (b, d) = real_coords(w1, w2.omega1);
    let m = Mat2Z::new(a.round() as i64, b.round() as i64, c.round() as i64, d.round() as i64);
    if m.det() != 1 {
        return Ok(None);
    }
    let img = m.act(w1);
    let scale = w2.omega0.norm().max(w2.omega1.norm());
    let err = (img.omega0 - w2.omega0).norm().max((img.omega1 - w2.omega1).norm());
    if err > tol * scale || !is_in_gamma1(t, &m)? {
        return Ok(None);
    }
    Ok(Some(m))
}
