use thiserror::Error;

/// A syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("action parameters make the endomorphism non-injective: {0}")]
    NonInjectiveAction(String),

    #[error("degree bound {cap} exceeded while computing a preimage ideal")]
    DegreeBoundExceeded { cap: usize },

    #[error("no explicit model is registered for {0}")]
    NoModelRegistered(String),

    #[error("unknown ring descriptor {0:?}")]
    UnknownRing(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = CoreError> = std::result::Result<T, E>;
