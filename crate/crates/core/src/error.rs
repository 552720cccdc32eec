use thiserror::Error;

/// Errors raised by graph, series and search operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KsfError {
    #[error("input error: {0}")]
    Input(String),
    #[error("capacity exceeded: {what} is {got}, limit {limit}")]
    Capacity {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("degree bound {bound} is too small: key of size {needed} required")]
    TruncationInsufficient { bound: usize, needed: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache error at line {line}: {msg}")]
    Cache { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for KsfError {
    fn from(e: std::io::Error) -> Self {
        KsfError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, KsfError>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(KsfError::Input(msg.into()))
}
