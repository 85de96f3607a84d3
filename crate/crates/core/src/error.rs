use thiserror::Error;

/// Errors raised by carrier construction, monad operations and the checkers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid carrier: {0}")]
    InvalidSet(String),
    #[error("cannot compose: {0}")]
    Composition(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("capability: {0}")]
    Capability(String),
    #[error("resource guard: {0}")]
    Resource(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
