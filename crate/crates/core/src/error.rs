use thiserror::Error;

/// Errors raised by constructions and file handling.
///
/// Law violations found by the validators are returned as data, not as
/// errors; an `Error` means the input could not be processed at all.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid simplex map: {0}")]
    InvalidMap(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("level {level} exceeds truncation {truncation}")]
    Truncation { level: usize, truncation: usize },

    #[error("malformed structure: {0}")]
    Malformed(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("limit exceeded: {0}")]
    Limit(String),

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
