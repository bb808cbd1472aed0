//! Weierstrass functions, Eisenstein series and the Dedekind eta function.
//!
//! A frame is first reduced to a Gauss-reduced basis `(u, v)` of the same
//! lattice, so that `tau = v/u` lies in the standard fundamental domain and
//! `|q| <= exp(-pi sqrt 3)`. On the normalized lattice `Z + tau Z`:
//!
//! ```text
//! zeta(r) = G2 r + pi cot(pi r) + 4 pi sum_n q^n/(1-q^n) sin(2 pi n r)
//! wp(r)   = -G2 + pi^2 csc^2(pi r) - 8 pi^2 sum_n n q^n/(1-q^n) cos(2 pi n r)
//! ```
//!
//! with `G2 = (pi^2/3)(1 - 24 sum sigma_1(n) q^n)`, evaluated after reducing
//! `r` into the cell centred at the origin. Homogeneity transports values
//! back to the original lattice.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::curve_family::Rat;
use crate::error::{Error, Result};
use crate::C64;

const I: C64 = C64 { re: 0.0, im: 1.0 };
const TAIL_EPS: f64 = 1e-18;
const MAX_TERMS: usize = 4000;
const POLE_EPS: f64 = 1e-14;

/// A pair of periods with Im(omega1/omega0) > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FramedPeriods {
    pub omega0: C64,
    pub omega1: C64,
}

impl FramedPeriods {
    pub fn new(omega0: C64, omega1: C64) -> Self {
        FramedPeriods { omega0, omega1 }
    }

    /// The frame (1, tau).
    pub fn from_tau(tau: C64) -> Self {
        Self::new(C64::new(1.0, 0.0), tau)
    }

    pub fn tau(&self) -> C64 {
        self.omega1 / self.omega0
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.omega0 * s, self.omega1 * s)
    }

    pub fn validate(&self) -> Result<()> {
        let im_tau = self.tau().im;
        if im_tau > 0.0 && im_tau.is_finite() && self.omega0.norm() > 0.0 {
            Ok(())
        } else {
            Err(Error::DegenerateFrame { im_tau })
        }
    }
}

/// A lattice prepared for repeated kernel evaluation.
#[derive(Debug, Clone)]
pub struct Lattice {
    frame: FramedPeriods,
    u: C64,
    v: C64,
    tau: C64,
    q: C64,
    g2: C64,
}

impl Lattice {
    pub fn new(w: &FramedPeriods) -> Result<Lattice> {
        w.validate()?;
        let (mut u, mut v) = (w.omega0, w.omega1);
        for _ in 0..10_000 {
            let n = (v / u).re.round();
            v -= u * n;
            if v.norm() < u.norm() * (1.0 - 1e-15) {
                let t = u;
                u = -v;
                v = t;
            } else {
                break;
            }
        }
        let tau = v / u;
        if !(tau.im > 0.0) {
            return Err(Error::DegenerateFrame { im_tau: tau.im });
        }
        let q = (2.0 * PI * I * tau).exp();
        let g2 = PI * PI / 3.0 * (1.0 - 24.0 * lambert(q, 1));
        Ok(Lattice { frame: *w, u, v, tau, q, g2 })
    }

    pub fn frame(&self) -> &FramedPeriods {
        &self.frame
    }

    /// The reduced basis (u, v) and tau = v/u.
    pub fn reduced_basis(&self) -> (C64, C64, C64) {
        (self.u, self.v, self.tau)
    }

    /// Real coordinates (x, y) with z = x u + y v.
    fn coords(&self, z: C64) -> (f64, f64) {
        let w = z / self.u;
        let y = w.im / self.tau.im;
        (w.re - y * self.tau.re, y)
    }

    /// Splits z/u = n0 + n1 tau + r with r in the centred cell.
    fn split(&self, z: C64) -> (f64, f64, C64) {
        let (x, y) = self.coords(z);
        let (n0, n1) = (x.round(), y.round());
        (n0, n1, z / self.u - n0 - self.tau * n1)
    }

    /// Integer coordinates of a lattice vector in the reduced basis.
    fn lattice_coords(&self, z: C64) -> (f64, f64) {
        let (x, y) = self.coords(z);
        (x.round(), y.round())
    }

    /// Distance from z to the nearest lattice point.
    pub fn distance_to_lattice(&self, z: C64) -> f64 {
        let (_, _, r) = self.split(z);
        let mut best = f64::INFINITY;
        for i in -1..=1 {
            for j in -1..=1 {
                let p = (r + i as f64 + self.tau * j as f64) * self.u;
                best = best.min(p.norm());
            }
        }
        best
    }

    fn check_pole(&self, r: C64) -> Result<()> {
        if r.norm() < POLE_EPS {
            Err(Error::Pole { distance: (r * self.u).norm() })
        } else {
            Ok(())
        }
    }

    /// Weierstrass zeta at the literal point z (quasi-periodic).
    pub fn zeta(&self, z: C64) -> Result<C64> {
        let (n0, n1, r) = self.split(z);
        self.check_pole(r)?;
        let e1 = self.tau * self.g2 - 2.0 * PI * I;
        Ok((self.zeta_unit(r) + self.g2 * n0 + e1 * n1) / self.u)
    }

    pub fn wp(&self, z: C64) -> Result<C64> {
        self.wp_derivative(0, z)
    }

    pub fn wp_prime(&self, z: C64) -> Result<C64> {
        self.wp_derivative(1, z)
    }

    /// The k-th derivative of wp.
    pub fn wp_derivative(&self, k: u32, z: C64) -> Result<C64> {
        let (_, _, r) = self.split(z);
        self.check_pole(r)?;
        Ok(self.wp_unit(k, r) / self.u.powi(k as i32 + 2))
    }

    /// Quasi-periods (eta0, eta1) = (2 zeta(omega0/2), 2 zeta(omega1/2)).
    pub fn quasi_periods(&self) -> (C64, C64) {
        let e1 = self.tau * self.g2 - 2.0 * PI * I;
        let eta = |w: C64| {
            let (m, n) = self.lattice_coords(w);
            (self.g2 * m + e1 * n) / self.u
        };
        (eta(self.frame.omega0), eta(self.frame.omega1))
    }

    /// Classical Eisenstein series G_m(0) = sum' omega^-m, m >= 3.
    pub fn eisenstein_zero(&self, m: u32) -> Result<C64> {
        if m < 3 {
            return Err(Error::UnsupportedWeight(m as i64));
        }
        if m % 2 == 1 {
            return Ok(C64::new(0.0, 0.0));
        }
        let zeta_m = riemann_zeta_even(m);
        let mut coef = 2.0 * (2.0 * PI * I).powi(m as i32);
        for j in 1..m {
            coef /= j as f64;
        }
        Ok((2.0 * zeta_m + coef * lambert(self.q, m - 1)) / self.u.powi(m as i32))
    }

    fn zeta_unit(&self, r: C64) -> C64 {
        let bp = (2.0 * PI * I * (self.tau + r)).exp();
        let bm = (2.0 * PI * I * (self.tau - r)).exp();
        let (mut qn, mut pp, mut pm) = (C64::one(), C64::one(), C64::one());
        let mut sum = C64::zero();
        for _ in 1..MAX_TERMS {
            qn *= self.q;
            pp *= bp;
            pm *= bm;
            let den = (1.0 - qn).norm();
            sum += (pp - pm) / (2.0 * I) / (1.0 - qn);
            // bound the term without the cancellation between pp and pm, which
            // can vanish at torsion points long before the tail is small
            let bound = (pp.norm() + pm.norm()) / den;
            if bound <= TAIL_EPS * (1.0 + sum.norm()) && pp.norm().max(pm.norm()) < 1.0 {
                break;
            }
        }
        self.g2 * r + PI * cot(PI * r) + 4.0 * PI * sum
    }

    fn wp_unit(&self, k: u32, r: C64) -> C64 {
        let c = cot(PI * r);
        let head = PI.powi(k as i32 + 2) * csc2_poly(k).iter().rev().fold(C64::zero(), |acc, &a| acc * c + a);
        let bp = (2.0 * PI * I * (self.tau + r)).exp();
        let bm = (2.0 * PI * I * (self.tau - r)).exp();
        let (mut qn, mut pp, mut pm) = (C64::one(), C64::one(), C64::one());
        let mut sum = C64::zero();
        let mut prev = f64::INFINITY;
        for n in 1..MAX_TERMS {
            qn *= self.q;
            pp *= bp;
            pm *= bm;
            let d = 2.0 * PI * n as f64 * I;
            let scale = n as f64 / (2.0 * (1.0 - qn));
            sum += (d.powu(k) * pp + (-d).powu(k) * pm) * scale;
            let mag = d.norm().powi(k as i32) * (pp.norm() + pm.norm()) * scale.norm();
            if mag <= TAIL_EPS * (1.0 + sum.norm()) && mag <= prev {
                break;
            }
            prev = mag;
        }
        let g2 = if k == 0 { self.g2 } else { C64::zero() };
        head - g2 - 8.0 * PI * PI * sum
    }
}

/// sum_n n^p q^n / (1 - q^n).
fn lambert(q: C64, p: u32) -> C64 {
    let mut qn = C64::one();
    let mut sum = C64::zero();
    let mut prev = f64::INFINITY;
    for n in 1..MAX_TERMS {
        qn *= q;
        let term = qn / (1.0 - qn) * (n as f64).powi(p as i32);
        sum += term;
        let mag = term.norm();
        if mag <= TAIL_EPS * (1.0 + sum.norm()) && mag <= prev {
            break;
        }
        prev = mag;
    }
    sum
}

/// cot(w) computed from the decaying exponential, stable for large |Im w|.
fn cot(w: C64) -> C64 {
    if w.im >= 0.0 {
        let e = (2.0 * I * w).exp();
        I * (e + 1.0) / (e - 1.0)
    } else {
        let e = (-2.0 * I * w).exp();
        I * (1.0 + e) / (1.0 - e)
    }
}

/// Coefficients (in powers of c = cot(pi r)) of the k-th derivative of
/// csc^2(pi r) = 1 + c^2, divided by pi^k.
fn csc2_poly(k: u32) -> &'static [f64] {
    static TABLE: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut out = vec![vec![1.0, 0.0, 1.0]];
        for _ in 0..160 {
            let p = out.last().unwrap();
            // next = -(1 + c^2) p'(c)
            let dp: Vec<f64> = (1..p.len()).map(|i| p[i] * i as f64).collect();
            let mut next = vec![0.0; dp.len() + 2];
            for (i, &a) in dp.iter().enumerate() {
                next[i] -= a;
                next[i + 2] -= a;
            }
            out.push(next);
        }
        out
    });
    &table[k as usize]
}

/// Bernoulli numbers B_0..B_n as exact rationals.
fn bernoulli(n: usize) -> BigRational {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let nmax = 200;
        let mut b: Vec<BigRational> = Vec::with_capacity(nmax + 1);
        b.push(BigRational::one());
        for m in 1..=nmax {
            // sum_{j<=m} binom(m+1, j) B_j = 0
            let mut s = BigRational::zero();
            let mut binom = BigInt::one();
            for (j, bj) in b.iter().enumerate() {
                s += BigRational::from_integer(binom.clone()) * bj;
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
        }
        b
    });
    table[n].clone()
}

/// zeta(m) for even m >= 2.
fn riemann_zeta_even(m: u32) -> f64 {
    let k = (m / 2) as i32;
    let b = bernoulli(m as usize).to_f64().unwrap();
    let mut v = (2.0 * PI).powi(m as i32) * b.abs() / 2.0;
    for j in 1..=m {
        v /= j as f64;
    }
    debug_assert!(k >= 1);
    v
}

pub fn wp(z: C64, w: &FramedPeriods) -> Result<C64> {
    Lattice::new(w)?.wp(z)
}

pub fn wp_prime(z: C64, w: &FramedPeriods) -> Result<C64> {
    Lattice::new(w)?.wp_prime(z)
}

pub fn wzeta(z: C64, w: &FramedPeriods) -> Result<C64> {
    Lattice::new(w)?.zeta(z)
}

pub fn quasi_period_eta1(w: &FramedPeriods) -> Result<(C64, C64)> {
    Ok(Lattice::new(w)?.quasi_periods())
}

/// Dedekind eta by the q-product.
pub fn dedekind_eta(tau: C64) -> Result<C64> {
    if !(tau.im > 0.0) {
        return Err(Error::Domain(format!("Im tau = {} must be positive", tau.im)));
    }
    let q = (2.0 * PI * I * tau).exp();
    let mut prod = C64::one();
    let mut qn = C64::one();
    for _ in 1..10_000_000 {
        qn *= q;
        prod *= 1.0 - qn;
        if qn.norm() < 1e-18 {
            break;
        }
    }
    Ok((2.0 * PI * I * tau / 24.0).exp() * prod)
}

/// Truncated Fourier series `q^offset * sum c_n q^n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QSeries {
    pub coefficients: Vec<C64>,
    #[serde(serialize_with = "ser_rat")]
    pub offset: Rat,
    pub order: usize,
}

fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

impl QSeries {
    pub fn new(coefficients: Vec<C64>, offset: Rat) -> Self {
        let order = coefficients.len().max(1);
        QSeries { coefficients, offset, order }
    }

    pub fn eval(&self, tau: C64) -> C64 {
        let q = (2.0 * PI * I * tau).exp();
        let lead = (2.0 * PI * I * tau * (*self.offset.numer() as f64 / *self.offset.denom() as f64)).exp();
        lead * self.coefficients.iter().rev().fold(C64::zero(), |acc, &c| acc * q + c)
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let n = self.coefficients.len().min(other.coefficients.len());
        let mut c = vec![C64::zero(); n];
        for (i, a) in self.coefficients.iter().take(n).enumerate() {
            for (j, b) in other.coefficients.iter().take(n - i).enumerate() {
                c[i + j] += a * b;
            }
        }
        QSeries::new(c, self.offset + other.offset)
    }
}

/// Extracts c_0..c_{n_max} of a 1-periodic holomorphic f by sampling the line
/// Im tau = height at `samples` equally spaced points. The error of c_n grows
/// like exp(2 pi n height) times the sampling error.
pub fn fourier_coefficients<F>(f: F, n_max: usize, height: f64, samples: usize) -> Result<QSeries>
where
    F: Fn(C64) -> Result<C64>,
{
    let m = samples.max(2 * n_max + 2);
    let base = C64::new(0.0, height);
    let mut buf: Vec<C64> = (0..m)
        .map(|j| f(base + j as f64 / m as f64))
        .collect::<Result<_>>()?;
    let scale = buf.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1e-300);
    let wrap = f(base + 1.0)?;
    if (wrap - buf[0]).norm() > 1e-8 * scale {
        return Err(Error::Contract(format!(
            "function is not 1-periodic (endpoint mismatch {:e})",
            (wrap - buf[0]).norm()
        )));
    }
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let coefficients = (0..=n_max)
        .map(|n| buf[n] / m as f64 * (2.0 * PI * n as f64 * height).exp())
        .collect();
    Ok(QSeries::new(coefficients, Rat::from_integer(0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn cusp_values_of_wp() {
        let w = FramedPeriods::from_tau(c(0.0, 10.0));
        assert!((wp(c(0.5, 0.0), &w).unwrap() - 2.0 * PI * PI / 3.0).norm() < 1e-6);
        assert!((wp(c(1.0 / 3.0, 0.0), &w).unwrap() - PI * PI).norm() < 1e-6);
    }

    #[test]
    fn zeta_is_odd() {
        let w = FramedPeriods::new(c(1.0, 0.0), c(0.0, 1.0));
        let z = c(0.3, 0.1);
        assert!((wzeta(-z, &w).unwrap() + wzeta(z, &w).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn pole_and_degenerate_errors() {
        let w = FramedPeriods::new(c(1.0, 0.0), c(0.2, 1.0));
        assert!(matches!(wp(c(1.2, 1.0), &w), Err(Error::Pole { .. })));
        assert!(matches!(wzeta(c(0.0, 0.0), &w), Err(Error::Pole { .. })));
        let flat = FramedPeriods::new(c(1.0, 0.0), c(2.0, 0.0));
        assert!(matches!(wp(c(0.3, 0.0), &flat), Err(Error::DegenerateFrame { .. })));
    }

    #[test]
    fn legendre_relation() {
        for w in [
            FramedPeriods::new(c(1.0, 0.0), c(0.0, 1.0)),
            FramedPeriods::new(c(0.7, -0.4), c(1.3, 2.1)),
            FramedPeriods::new(c(1.0, 0.0), c(3.4, 0.05)),
        ] {
            let (e0, e1) = quasi_period_eta1(&w).unwrap();
            let lhs = e0 * w.omega1 - e1 * w.omega0;
            assert!((lhs - 2.0 * PI * I).norm() < 1e-10, "{lhs}");
        }
    }

    #[test]
    fn quasi_period_scaling() {
        let (a0, a1) = quasi_period_eta1(&FramedPeriods::new(c(1.0, 0.0), c(0.0, 1.0))).unwrap();
        let (b0, b1) = quasi_period_eta1(&FramedPeriods::new(c(2.0, 0.0), c(0.0, 2.0))).unwrap();
        assert!((b0 - a0 / 2.0).norm() < 1e-13);
        assert!((b1 - a1 / 2.0).norm() < 1e-13);
    }

    #[test]
    fn eta_transformations() {
        let t = c(0.2, 0.9);
        let lhs = dedekind_eta(t + 1.0).unwrap();
        let rhs = C64::from_polar(1.0, PI / 12.0) * dedekind_eta(t).unwrap();
        assert!((lhs - rhs).norm() < 1e-12 * rhs.norm());
        let t = c(0.3, 1.1);
        let lhs = dedekind_eta(-1.0 / t).unwrap();
        let rhs = (t / I).sqrt() * dedekind_eta(t).unwrap();
        assert!((lhs - rhs).norm() < 1e-12 * rhs.norm());
        let v = dedekind_eta(c(0.0, 10.0)).unwrap();
        let lead = (-20.0 * PI / 24.0).exp();
        assert!((v - lead).norm() / lead < 1e-20 + 1e-15);
        assert!(dedekind_eta(c(0.3, 0.0)).is_err());
    }

    #[test]
    fn bernoulli_and_zeta_values() {
        assert_eq!(bernoulli(2), BigRational::new(1.into(), 6.into()));
        assert_eq!(bernoulli(12), BigRational::new((-691).into(), 2730.into()));
        assert!((riemann_zeta_even(4) - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!((riemann_zeta_even(6) - PI.powi(6) / 945.0).abs() < 1e-15);
    }

    #[test]
    fn fourier_of_constant_and_aperiodic() {
        let s = fourier_coefficients(|_| Ok(c(1.0, 0.0)), 4, 0.5, 64).unwrap();
        assert!((s.coefficients[0] - 1.0).norm() < 1e-14);
        assert!(s.coefficients[1..].iter().all(|v| v.norm() < 1e-12));
        assert!(fourier_coefficients(|t| Ok(t), 4, 0.5, 64).is_err());
    }
}
