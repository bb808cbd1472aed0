use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point lies on the pole set (distance {distance:e})")]
    Pole { distance: f64 },
    #[error("degenerate frame: Im(omega1/omega0) = {im_tau:e}")]
    DegenerateFrame { im_tau: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("weight {0} is not absolutely convergent; use the exceptional series")]
    UnsupportedWeight(i64),
    #[error("unknown exceptional series {name} for type {ty}")]
    UnknownSeries { name: String, ty: String },
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("determinant {0} is not 1")]
    NotUnimodular(i64),
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
    #[error("moduli point lies on the discriminant (|Delta| = {0:e})")]
    Discriminant(f64),
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    Convergence {
        iterations: usize,
        residual: f64,
        trace: Vec<f64>,
    },
    #[error("contract violation: {0}")]
    Contract(String),
}
