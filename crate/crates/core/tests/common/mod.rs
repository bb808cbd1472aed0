//! Oracles shared by the integration tests.

use std::f64::consts::PI;

use num_traits::Zero;
use periodforge::{CurveType, C64};

/// Closed forms of sum_k (w + k)^-m over the integers.
fn row_sum(m: u32, w: C64) -> C64 {
    let s = (w * PI).sin();
    let (csc, cot) = (s.inv(), (w * PI).cos() / s);
    match m {
        2 => csc * csc * PI.powi(2),
        3 => csc * csc * cot * PI.powi(3),
        4 => (csc * csc * cot * cot * 2.0 + csc.powi(4)) * (PI.powi(4) / 3.0),
        _ => unreachable!(),
    }
}

/// Kernel values on the lattice Z + 10i Z from trigonometric limits.
pub struct TrigLimit {
    pub omega0: C64,
}

impl TrigLimit {
    pub const TAU: C64 = C64 { re: 0.0, im: 10.0 };

    fn wp(&self, z: C64) -> C64 {
        (z * PI).sin().powi(-2) * PI * PI - PI * PI / 3.0
    }

    fn zeta(&self, z: C64) -> C64 {
        (z * PI).cos() / (z * PI).sin() * PI + z * (PI * PI / 3.0)
    }

    /// G_m(a) for a point a, summed over rows a + n tau.
    fn g(&self, m: u32, a: C64) -> C64 {
        let mut s = C64::zero();
        for n in -3i32..=3 {
            let w = a + Self::TAU * n as f64;
            if w.norm() < 1e-12 {
                let zeta_m: f64 = (1..200_000).map(|k: i32| (k as f64).powi(-(m as i32))).sum();
                if m % 2 == 0 {
                    s += 2.0 * zeta_m;
                }
            } else {
                s += row_sum(m, w);
            }
        }
        s
    }

    /// Row values in the order of the cusp table.
    pub fn rows(&self, t: CurveType) -> Vec<C64> {
        let w0 = self.omega0;
        match t {
            CurveType::A2 => {
                let (g4, g6) = (self.g(4, C64::zero()), self.g6_zero());
                vec![g4, g6, g4 * (15.0 / 4.0), g6 * (35.0 / 16.0)]
            }
            CurveType::B2 => {
                let p = self.wp(w0 / 2.0);
                let g4 = self.g(4, C64::zero());
                let g4h = self.g(4, w0 / 2.0);
                let gl = p * p * (5.0 / 32.0) + (g4 - g4h) * (5.0 / 8.0);
                vec![g4, p, p * p, g4h, p * 1.5, gl]
            }
            CurveType::G2 => {
                let gs = self.zeta(w0 / 3.0) - self.zeta(w0 / 2.0) * (2.0 / 3.0);
                let g3 = self.g(3, w0 / 3.0);
                vec![gs, self.wp(w0 / 3.0), g3, gs, gs * gs * gs * 2.0 - g3]
            }
        }
    }

    /// G_6(0): the central row is 2 zeta(6); the other rows are negligible.
    fn g6_zero(&self) -> C64 {
        let z6: f64 = (1..20_000).map(|k: i32| (k as f64).powi(-6)).sum();
        C64::new(2.0 * z6, 0.0)
    }
}

