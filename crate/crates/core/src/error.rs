use thiserror::Error;

/// Errors raised by the constructions and checks in this crate.
///
/// Messages name the violated precondition so front ends can echo them
/// verbatim.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("subspace is not invariant: {0}")]
    NotInvariant(String),
    #[error("size guard: {0}")]
    ResourceGuard(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => { $crate::error::Error::InvalidInput(format!($($arg)*)) };
}

macro_rules! mismatch {
    ($($arg:tt)*) => { $crate::error::Error::DimensionMismatch(format!($($arg)*)) };
}

pub(crate) use invalid;
pub(crate) use mismatch;
