//! Period maps of the elliptic families of type A2, B2 and G2.
//!
//! The crate covers the curve families and their discriminants, the monodromy
//! group, Weierstrass kernels evaluated by q-series, shifted Eisenstein series,
//! exact Laurent solutions of the Hamilton system, the inversion map from
//! framed periods to moduli, forward periods, and numerical certification of
//! the eta-product identities for the discriminants.

pub mod curve_family;
pub mod eisenstein;
pub mod elliptic_kernel;
pub mod error;
pub mod exec;
pub mod identity_suite;
pub mod inversion;
pub mod laurent_engine;
pub mod modular_group;
pub mod periods;
pub mod profile;

pub use curve_family::{CurvePoint, CurveType, ModuliPoint};
pub use elliptic_kernel::FramedPeriods;
pub use error::{Error, Result};
pub use modular_group::Mat2Z;

/// Complex scalar used throughout the numerical modules.
pub type C64 = num_complex::Complex64;
