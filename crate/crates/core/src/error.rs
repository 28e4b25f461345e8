use thiserror::Error;

/// Errors raised across the library. Each variant maps onto one CLI exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A diagram, tensor network or braid that violates its incidence invariants.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: &'static str, found: &'static str },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    /// A Lie algebra or representation axiom failed; the message names the witness.
    #[error("validation failed: {0}")]
    Validation(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("grading mismatch: {0}")]
    Grading(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("unknown name: {0}")]
    Unknown(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, column, message: message.into() }
    }
}
