use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid dimension N = {n}: {reason}")]
    InvalidDimension { n: usize, reason: &'static str },

    #[error("space mismatch: N = {left} versus N = {right}")]
    SpaceMismatch { left: usize, right: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: i64, max: usize },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at t = {0}")]
    PoleAtPoint(String),

    #[error("series does not terminate within {0} terms")]
    NonTerminating(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
