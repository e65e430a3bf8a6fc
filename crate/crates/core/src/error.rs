use thiserror::Error;

/// Errors raised by the arithmetic and decision layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division in {0}")]
    InexactDivision(&'static str),
    #[error("characteristic {p} divides the degree {d}")]
    UnsupportedCharacteristic { p: u64, d: u64 },
    #[error("size limit exceeded at index {index}: {what}")]
    SizeLimit { index: usize, what: String },
    #[error("field context mismatch")]
    ContextMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
