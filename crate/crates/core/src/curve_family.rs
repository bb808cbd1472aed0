//! The three curve families, their discriminants, weights and symmetries.
//!
//! ```text
//! A2: F = y^2 - (4x^3 - g_s x - g_l)
//! B2: F = y^2 - (x^4 - g_s x^2 + g_l + g_s^2/8)
//! G2: F = x(y^2 - x^2) + g_s(3x^2 + y^2) - g_l - 2g_s^3
//! ```

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

pub type Rat = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurveType {
    A2,
    B2,
    G2,
}

/// Weights of coordinates, parameters and functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Weights {
    pub x: Rat,
    pub y: Rat,
    pub g_s: Rat,
    pub g_l: Rat,
    pub z: Rat,
    pub f: Rat,
    pub delta: Rat,
}

impl CurveType {
    pub const ALL: [CurveType; 3] = [CurveType::A2, CurveType::B2, CurveType::G2];

    /// The dihedral parameter p of I2(p).
    pub fn p(self) -> u32 {
        match self {
            CurveType::A2 => 3,
            CurveType::B2 => 4,
            CurveType::G2 => 6,
        }
    }

    /// Level N = floor(p/2); also the number of points at infinity.
    pub fn level(self) -> i64 {
        (self.p() / 2) as i64
    }

    /// The Coxeter integer k with (AB)^k = 1 and Delta^{1/k} a modular form.
    pub fn k(self) -> u32 {
        match self {
            CurveType::A2 => 6,
            CurveType::B2 => 4,
            CurveType::G2 => 3,
        }
    }

    pub fn weights(self) -> Weights {
        let r = Rat::new;
        let one = r(1, 1);
        match self {
            CurveType::A2 => Weights {
                x: r(1, 3),
                y: r(1, 2),
                g_s: r(2, 3),
                g_l: one,
                z: r(-1, 6),
                f: one,
                delta: r(2, 1),
            },
            CurveType::B2 => Weights {
                x: r(1, 4),
                y: r(1, 2),
                g_s: r(1, 2),
                g_l: one,
                z: r(-1, 4),
                f: one,
                delta: r(3, 1),
            },
            CurveType::G2 => Weights {
                x: r(1, 3),
                y: r(1, 3),
                g_s: r(1, 3),
                g_l: one,
                z: r(-1, 3),
                f: one,
                delta: r(4, 1),
            },
        }
    }

    /// Constant c of the real-chamber description: sqrt(27), 8, 1/2.
    pub fn disc_const(self) -> f64 {
        match self {
            CurveType::A2 => 27f64.sqrt(),
            CurveType::B2 => 8.0,
            CurveType::G2 => 0.5,
        }
    }

    /// Modular weights (m_s, m_l) of (g_s, g_l) as functions of the frame:
    /// g(s*omega) = (s^-m_s g_s, s^-m_l g_l).
    pub fn frame_weights(self) -> (i32, i32) {
        match self {
            CurveType::A2 => (4, 6),
            CurveType::B2 => (2, 4),
            CurveType::G2 => (1, 3),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CurveType::A2 => "A2",
            CurveType::B2 => "B2",
            CurveType::G2 => "G2",
        }
    }
}

impl fmt::Display for CurveType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CurveType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a2" => Ok(CurveType::A2),
            "b2" => Ok(CurveType::B2),
            "g2" => Ok(CurveType::G2),
            _ => Err(Error::Domain(format!("unknown curve type {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModuliPoint {
    pub g_s: C64,
    pub g_l: C64,
    #[serde(rename = "type")]
    pub ty: CurveType,
}

impl ModuliPoint {
    pub fn new(ty: CurveType, g_s: C64, g_l: C64) -> Self {
        ModuliPoint { g_s, g_l, ty }
    }

    pub fn real(ty: CurveType, g_s: f64, g_l: f64) -> Self {
        Self::new(ty, C64::new(g_s, 0.0), C64::new(g_l, 0.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub x: C64,
    pub y: C64,
}

impl CurvePoint {
    pub fn new(x: C64, y: C64) -> Self {
        CurvePoint { x, y }
    }

    pub fn real(x: f64, y: f64) -> Self {
        Self::new(C64::new(x, 0.0), C64::new(y, 0.0))
    }
}

#[allow(non_snake_case)]
pub fn evaluate_F(t: CurveType, pt: CurvePoint, g: ModuliPoint) -> C64 {
    let (x, y, s, l) = (pt.x, pt.y, g.g_s, g.g_l);
    match t {
        CurveType::A2 => y * y - (4.0 * x * x * x - s * x - l),
        CurveType::B2 => y * y - (x.powi(4) - s * x * x + l + s * s / 8.0),
        CurveType::G2 => x * (y * y - x * x) + s * (3.0 * x * x + y * y) - l - 2.0 * s * s * s,
    }
}

/// Returns (dF/dx, dF/dy).
#[allow(non_snake_case)]
pub fn grad_F(t: CurveType, pt: CurvePoint, g: ModuliPoint) -> (C64, C64) {
    let (x, y, s) = (pt.x, pt.y, g.g_s);
    match t {
        CurveType::A2 => (-(12.0 * x * x - s), 2.0 * y),
        CurveType::B2 => (-(4.0 * x * x * x - 2.0 * s * x), 2.0 * y),
        CurveType::G2 => (y * y - 3.0 * x * x + 6.0 * s * x, 2.0 * x * y + 2.0 * s * y),
    }
}

/// An irreducible factor of the discriminant with its multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscFactor {
    pub label: &'static str,
    pub value: C64,
    pub multiplicity: u32,
}

/// Factors in printed order, the (+) factor first.
pub fn discriminant_factors(t: CurveType, g: ModuliPoint) -> Vec<DiscFactor> {
    let (s, l) = (g.g_s, g.g_l);
    match t {
        CurveType::A2 => vec![DiscFactor {
            label: "-27g_l^2+g_s^3",
            value: -27.0 * l * l + s * s * s,
            multiplicity: 1,
        }],
        CurveType::B2 => vec![
            DiscFactor {
                label: "8g_l+g_s^2",
                value: 8.0 * l + s * s,
                multiplicity: 1,
            },
            DiscFactor {
                label: "-8g_l+g_s^2",
                value: -8.0 * l + s * s,
                multiplicity: 2,
            },
        ],
        CurveType::G2 => vec![
            DiscFactor {
                label: "g_l+2g_s^3",
                value: l + 2.0 * s * s * s,
                multiplicity: 1,
            },
            DiscFactor {
                label: "-g_l+2g_s^3",
                value: -l + 2.0 * s * s * s,
                multiplicity: 3,
            },
        ],
    }
}

pub fn discriminant(t: CurveType, g: ModuliPoint) -> C64 {
    discriminant_factors(t, g)
        .iter()
        .map(|f| f.value.powu(f.multiplicity))
        .product()
}

/// Square-free part: -27g_l^2+g_s^3, -64g_l^2+g_s^4, -g_l^2+4g_s^6.
pub fn reduced_discriminant(t: CurveType, g: ModuliPoint) -> C64 {
    let (s, l) = (g.g_s, g.g_l);
    match t {
        CurveType::A2 => -27.0 * l * l + s * s * s,
        CurveType::B2 => -64.0 * l * l + s.powu(4),
        CurveType::G2 => -(l * l) + 4.0 * s.powu(6),
    }
}

/// The automorphism sigma fixing F; sigma^N is the identity.
pub fn sigma_action(t: CurveType, pt: CurvePoint) -> CurvePoint {
    let (x, y) = (pt.x, pt.y);
    match t {
        CurveType::A2 => pt,
        CurveType::B2 => CurvePoint::new(-x, -y),
        CurveType::G2 => CurvePoint::new((y - x) / 2.0, (-3.0 * x - y) / 2.0),
    }
}

fn principal_pow(s: C64, w: Rat) -> C64 {
    (s.ln() * (*w.numer() as f64 / *w.denom() as f64)).exp()
}

/// Weighted rescaling by s, using principal branches of fractional powers.
/// Exact homogeneity holds for s off the negative real axis.
pub fn scale_action(
    t: CurveType,
    s: C64,
    pt: CurvePoint,
    g: ModuliPoint,
) -> Result<(CurvePoint, ModuliPoint)> {
    if s == C64::new(0.0, 0.0) {
        return Err(Error::Domain("scale factor must be nonzero".into()));
    }
    let w = t.weights();
    Ok((
        CurvePoint::new(principal_pow(s, w.x) * pt.x, principal_pow(s, w.y) * pt.y),
        ModuliPoint::new(
            t,
            principal_pow(s, w.g_s) * g.g_s,
            principal_pow(s, w.g_l) * g.g_l,
        ),
    ))
}
