use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Validation(String),
    #[error("{}", .0.join("; "))]
    Violations(Vec<String>),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("integrity failure: {0}")]
    Integrity(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Error {
        Error::Parse { line, message: message.into() }
    }

    pub(crate) fn domain(message: impl Into<String>) -> Error {
        Error::Domain(message.into())
    }

    pub(crate) fn validation(message: impl Into<String>) -> Error {
        Error::Validation(message.into())
    }

    /// Process exit code: 1 validation, 2 resource cap, 3 internal integrity.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource(_) => 2,
            Error::Integrity(_) => 3,
            _ => 1,
        }
    }
}
