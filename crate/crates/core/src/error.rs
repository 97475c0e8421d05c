use thiserror::Error;

use crate::combinatorics::Bidegree;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid shape P^{n} x P^{m}: both factors must be positive-dimensional")]
    InvalidShape { n: i64, m: i64 },

    #[error("generator bidegree {0} must be at least (1,1)")]
    InvalidDegree(Bidegree),

    #[error("subset enumeration limited to {limit} generators, got {got}")]
    SubsetLimitExceeded { got: usize, limit: usize },

    #[error("expected {expected} generator degrees, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid window {lower}..={upper}")]
    WindowInvalid { lower: Bidegree, upper: Bidegree },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("Koszul index {index} outside 0..={max}")]
    IndexOutOfRange { index: i64, max: usize },

    #[error("saturation did not stabilize within padding {padding}")]
    PaddingExhausted { padding: usize },

    #[error("window upper corner {upper} does not dominate {required}")]
    WindowTooSmall { upper: Bidegree, required: Bidegree },

    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("not a complete intersection of points: {0}")]
    NotCompleteIntersection(String),

    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),

    #[error("the two primes must differ (both are {0})")]
    SamePrime(u64),
}
