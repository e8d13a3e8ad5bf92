use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CensusError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A size or parameter exceeded a configured resource guard.
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    /// Normalizing by P(1) when the family is empty.
    #[error("normalization undefined: P(1) = 0 for a = {a}, n = {n}")]
    UndefinedNormalization { a: usize, n: usize },

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("zero polynomial has no finite root count")]
    ZeroPolynomial,

    #[error("property violation: {0}")]
    PropertyViolation(String),

    #[error("identity violation: {0}")]
    IdentityViolation(String),

    #[error("insufficient n: {0}")]
    InsufficientN(String),
}

pub type Result<T> = std::result::Result<T, CensusError>;
