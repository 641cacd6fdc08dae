use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
///
/// Each variant maps to a distinct CLI exit code via [`Error::exit_code`]:
/// parse failures (2), validation failures and guard refusals (3), I/O
/// failures (4) and infeasible scenarios (5).
#[derive(Debug, Error)]
pub enum Error {
    /// Input did not parse as the documented JSON schema.
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    /// Input parsed but violates an invariant; `field` points at the culprit.
    #[error("invalid `{field}`: {message}")]
    Validation { field: String, message: String },

    /// Reading or writing a file failed.
    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// No feasible routing/configuration exists for the scenario.
    #[error("infeasible scenario: {0}")]
    Infeasible(String),

    /// A search-budget guard was exceeded; rerun with the override flag to
    /// proceed anyway.
    #[error("guard exceeded: {0}")]
    Guard(String),
}

impl Error {
    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code reported by the CLI for this error kind.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Validation { .. } | Error::Guard(_) => 3,
            Error::Io { .. } => 4,
            Error::Infeasible(_) => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
