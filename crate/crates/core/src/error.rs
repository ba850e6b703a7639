use alloc::string::String;

use thiserror::Error;

/// Everything that can go wrong in the algebra, the descent pipeline or
/// the instance generator.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid field descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("balance violation at level {gamma}: r = {r}, s = {s}")]
    BalanceViolation { gamma: i64, r: usize, s: usize },
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
    #[error("instance generation failed: {0}")]
    GenerationFailed(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    pub(crate) fn dim(message: impl Into<String>) -> Self {
        Error::DimensionMismatch(message.into())
    }

    pub(crate) fn invariant(message: impl Into<String>) -> Self {
        Error::InternalInvariant(message.into())
    }
}
