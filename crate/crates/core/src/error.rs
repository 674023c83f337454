use thiserror::Error;

/// Errors raised by the library. Each variant maps to one CLI exit code.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("{0}")]
    Domain(String),
    /// A configured enumeration cap would be exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    /// An identity that should hold exactly did not.
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    /// Process exit code: 1 verification failure, 2 domain/input error,
    /// 3 resource cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Verification(_) => 1,
            Error::Domain(_) | Error::Parse(_) | Error::Io(_) => 2,
            Error::Resource(_) => 3,
        }
    }
}
