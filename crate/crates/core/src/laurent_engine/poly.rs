use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::curve_family::{CurveType, Rat};
use crate::C64;

/// Polynomial in (g_s, g_l) with exact rational coefficients. Exponent pairs
/// map to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoly {
    pub ty: CurveType,
    terms: BTreeMap<(u32, u32), BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl GradedPoly {
    pub fn zero(ty: CurveType) -> Self {
        GradedPoly { ty, terms: BTreeMap::new() }
    }

    pub fn constant(ty: CurveType, c: BigRational) -> Self {
        Self::monomial(ty, 0, 0, c)
    }

    pub fn monomial(ty: CurveType, i: u32, j: u32, c: BigRational) -> Self {
        let mut p = Self::zero(ty);
        if !c.is_zero() {
            p.terms.insert((i, j), c);
        }
        p
    }

    pub fn g_s(ty: CurveType) -> Self {
        Self::monomial(ty, 1, 0, BigRational::one())
    }

    pub fn g_l(ty: CurveType) -> Self {
        Self::monomial(ty, 0, 1, BigRational::one())
    }

    pub fn from_terms(ty: CurveType, terms: impl IntoIterator<Item = ((u32, u32), BigRational)>) -> Self {
        let mut p = Self::zero(ty);
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: (u32, u32), c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The value if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.ty);
        }
        GradedPoly {
            ty: self.ty,
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn monomial_weight(ty: CurveType, i: u32, j: u32) -> Rat {
        let w = ty.weights();
        w.g_s * i as i64 + w.g_l * j as i64
    }

    /// The common weight of all monomials, or `None` if inhomogeneous.
    /// The zero polynomial is homogeneous of every weight and returns `None`.
    pub fn weight(&self) -> Option<Rat> {
        let mut ws = self.terms.keys().map(|&(i, j)| Self::monomial_weight(self.ty, i, j));
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, w: Rat) -> bool {
        self.terms
            .keys()
            .all(|&(i, j)| Self::monomial_weight(self.ty, i, j) == w)
    }

    pub fn eval(&self, g_s: C64, g_l: C64) -> C64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| g_s.powu(i) * g_l.powu(j) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    pub fn monomial_name(i: u32, j: u32) -> String {
        let part = |name: &str, e: u32| match e {
            0 => None,
            1 => Some(name.to_string()),
            _ => Some(format!("{name}^{e}")),
        };
        let parts: Vec<String> = [part("g_s", i), part("g_l", j)].into_iter().flatten().collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| format!("({c})*{}", Self::monomial_name(i, j)))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, o: &GradedPoly) -> GradedPoly {
        let mut p = self.clone();
        for (k, c) in &o.terms {
            p.add_term(*k, c.clone());
        }
        p
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, o: &GradedPoly) -> GradedPoly {
        let mut p = self.clone();
        for (k, c) in &o.terms {
            p.add_term(*k, -c.clone());
        }
        p
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, o: &GradedPoly) -> GradedPoly {
        let mut p = GradedPoly::zero(self.ty);
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                p.add_term((i + k, j + l), a * b);
            }
        }
        p
    }
}
