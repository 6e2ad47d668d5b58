use thiserror::Error;

use crate::division_ring::Ring;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ring mismatch: {0:?} vs {1:?}")]
    RingMismatch(Ring, Ring),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("inverse of zero")]
    ZeroInverse,

    #[error("not hermitian: {0}")]
    NotHermitian(String),

    #[error("not a projection (idempotence residual {0:.3e})")]
    NotProjection(f64),

    #[error("zero projection is not allowed here")]
    ZeroProjection,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("transition probability does not exist (residual {0:.3e})")]
    NoTransition(f64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid construction: {0}")]
    Construction(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::RingMismatch(..) => "ring_mismatch",
            Error::Shape(_) => "shape",
            Error::ZeroInverse => "zero_inverse",
            Error::NotHermitian(_) => "not_hermitian",
            Error::NotProjection(_) => "not_projection",
            Error::ZeroProjection => "zero_projection",
            Error::Unsupported(_) => "unsupported",
            Error::NoTransition(_) => "no_transition",
            Error::Precondition(_) => "precondition",
            Error::Construction(_) => "construction",
            Error::Infeasible(_) => "infeasible",
            Error::Parse(_) => "parse",
        }
    }
}
