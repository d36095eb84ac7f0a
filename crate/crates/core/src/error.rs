use thiserror::Error;

/// Errors raised by constructors and operations in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("value {value} outside the Einstein interval (-{c}, {c}]")]
    OutOfInterval { value: f64, c: f64 },

    #[error("norm {norm} is not below the bound {bound}")]
    NormOutOfBall { norm: f64, bound: f64 },

    #[error("the boundary element c has no inverse")]
    BoundaryNotInvertible,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("singular denominator 1 + <w|z> = {0}")]
    SingularDenominator(f64),

    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("division by zero at chain position {0}")]
    DivisionByZero(usize),

    #[error("element has no multiplicative inverse")]
    InverseUndefined,

    #[error("non-finite input: {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
