use std::collections::BTreeMap;

use num_rational::BigRational;

use super::poly::GradedPoly;
use crate::curve_family::CurveType;

/// Sentinel precision of exact (non-truncated) series.
pub const EXACT: i32 = i32::MAX / 4;

/// Truncated Laurent series in z with polynomial coefficients.
///
/// Coefficients are known exactly for powers `< prec`; no power below `lo`
/// occurs.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub ty: CurveType,
    pub lo: i32,
    pub prec: i32,
    coeffs: BTreeMap<i32, GradedPoly>,
}

impl Series {
    pub fn new(ty: CurveType, lo: i32, prec: i32) -> Self {
        Series { ty, lo, prec, coeffs: BTreeMap::new() }
    }

    pub fn constant(p: GradedPoly) -> Self {
        let mut s = Series::new(p.ty, 0, EXACT);
        s.set(0, p);
        s
    }

    pub fn set(&mut self, power: i32, p: GradedPoly) {
        debug_assert!(power >= self.lo);
        if p.is_zero() {
            self.coeffs.remove(&power);
        } else {
            self.coeffs.insert(power, p);
        }
    }

    pub fn coeff(&self, power: i32) -> GradedPoly {
        self.coeffs.get(&power).cloned().unwrap_or_else(|| GradedPoly::zero(self.ty))
    }

    pub fn known(&self) -> impl Iterator<Item = (&i32, &GradedPoly)> {
        let prec = self.prec;
        self.coeffs.range(..prec)
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero_to_prec(&self) -> bool {
        self.known().all(|(_, p)| p.is_zero())
    }

    pub fn add(&self, o: &Series) -> Series {
        let mut s = Series::new(self.ty, self.lo.min(o.lo), self.prec.min(o.prec));
        for (k, p) in self.coeffs.iter().chain(o.coeffs.iter()) {
            if *k < s.prec {
                let v = &s.coeff(*k) + p;
                s.set(*k, v);
            }
        }
        s
    }

    pub fn sub(&self, o: &Series) -> Series {
        self.add(&o.scale(&-BigRational::from_integer(1.into())))
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        let mut s = Series::new(self.ty, self.lo, self.prec);
        for (k, p) in &self.coeffs {
            s.set(*k, p.scale(c));
        }
        s
    }

    pub fn mul(&self, o: &Series) -> Series {
        let prec = (self.prec.saturating_add(o.lo)).min(o.prec.saturating_add(self.lo)).min(EXACT);
        let mut s = Series::new(self.ty, self.lo + o.lo, prec);
        for (i, a) in self.coeffs.range(..self.prec) {
            for (j, b) in o.coeffs.range(..o.prec) {
                let k = i + j;
                if k < prec {
                    let v = &s.coeff(k) + &(a * b);
                    s.set(k, v);
                }
            }
        }
        s
    }

    pub fn derivative(&self) -> Series {
        let mut s = Series::new(self.ty, self.lo - 1, self.prec.saturating_sub(1));
        for (k, p) in &self.coeffs {
            if *k != 0 {
                s.set(k - 1, p.scale(&BigRational::from_integer((*k).into())));
            }
        }
        s
    }
}
