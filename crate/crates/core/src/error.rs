use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DwpError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl DwpError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        DwpError::Parse { line, message: message.into() }
    }
}

pub type Result<T, E = DwpError> = std::result::Result<T, E>;
