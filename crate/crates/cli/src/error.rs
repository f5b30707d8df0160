use cj_core::{CoreError, ParseError};
use thiserror::Error;

/// Failures that stop a command before any verdict is produced.
/// All of them map to exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{input:?}: {source}")]
    Parse { input: String, source: ParseError },

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("{path}: {message}")]
    Scenario { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }

    pub fn parse(input: &str, source: ParseError) -> Self {
        CliError::Parse {
            input: input.to_string(),
            source,
        }
    }

    /// The offending input with a caret under the error position, for
    /// parse errors.
    pub fn caret(&self) -> Option<String> {
        match self {
            CliError::Parse { input, source } => {
                let col = input
                    .char_indices()
                    .take_while(|(i, _)| *i < source.position)
                    .count();
                Some(format!("  {input}\n  {}^", " ".repeat(col)))
            }
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
