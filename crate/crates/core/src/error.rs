use std::fmt;

use thiserror::Error;

use crate::algebra::Field;

/// Errors raised by the workbench. Every fallible public operation returns
/// this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("variable count mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent at position {pos} in a non-Laurent polynomial")]
    NegativeExponent { pos: usize },
    #[error("unknown variable index {index} at position {pos} (nvars = {nvars})")]
    UnknownVariable { index: usize, pos: usize, nvars: usize },
    #[error("invalid field descriptor: {0}")]
    InvalidField(String),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("retry budget exhausted after {0} attempts")]
    RetryBudget(usize),
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("result is not a polynomial: {0}")]
    NonPolynomial(String),
    #[error("invalid descriptor at {path}: {msg}")]
    Descriptor { path: String, msg: String },
    #[error("mode error: {0}")]
    Mode(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn precondition(msg: impl fmt::Display) -> Self {
        Error::Precondition(msg.to_string())
    }

    pub(crate) fn descriptor(path: impl Into<String>, msg: impl fmt::Display) -> Self {
        Error::Descriptor {
            path: path.into(),
            msg: msg.to_string(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Descriptor {
            path: String::new(),
            msg: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
