use thiserror::Error;

pub type Result<T> = std::result::Result<T, MzvError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MzvError {
    /// A precondition on an argument was violated (inadmissible index,
    /// parameter out of range, vanishing denominator, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),

    /// A generator built an index it should never produce. This always
    /// points at a transcription bug, never at user input.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl MzvError {
    pub fn domain(msg: impl Into<String>) -> Self {
        MzvError::Domain(msg.into())
    }
}

impl From<std::io::Error> for MzvError {
    fn from(e: std::io::Error) -> Self {
        MzvError::Io(e.to_string())
    }
}
