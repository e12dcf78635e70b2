use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("not a reduced word for the longest element: {0}")]
    InvalidWord(String),

    #[error("parameter must be strictly positive: {0}")]
    NonPositive(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A computation reached a state its inputs rule out, e.g. a repeated
    /// eigenvalue of a totally positive matrix.
    #[error("internal contradiction: {0}")]
    Contradiction(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
