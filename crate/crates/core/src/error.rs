use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("check failed: {0}")]
    Check(String),
    #[error("dimension mismatch: {0}")]
    Dim(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
