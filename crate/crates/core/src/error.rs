use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by form arithmetic, modular arithmetic and the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid discriminant {0}: must be negative and congruent to 0 or 1 mod 4")]
    InvalidDiscriminant(BigInt),

    #[error("transformation matrix has determinant {0}, expected 1")]
    InvalidMatrix(BigInt),

    #[error("discriminant mismatch: {0} vs {1}")]
    DiscriminantMismatch(BigInt, BigInt),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("order exceeds configured ceiling {cap}")]
    OrderOverflow { cap: u64 },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("singular Hensel lift: p = {p} divides 2r")]
    SingularLift { p: u64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
