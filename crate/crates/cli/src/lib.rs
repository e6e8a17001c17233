//! Command-line front end for the (T,V)-space toolkit: the text format, the
//! `validate`/`check`/`compute` commands and the built-in property suite.

pub mod commands;
pub mod format;
pub mod suite;
pub mod workspace;

use thiserror::Error;

pub use format::{ParseError, Pos};
pub use workspace::{ClassSpec, Item, Workspace};

/// Exit code for a passing run.
pub const EXIT_OK: i32 = 0;
/// Exit code for a violation or a negative verdict; a witness is printed.
pub const EXIT_VIOLATION: i32 = 1;
/// Exit code for I/O, parse, usage and computation errors.
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {err}")]
    Parse { path: String, err: ParseError },
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] tvspace::Error),
}

impl From<String> for CliError {
    fn from(s: String) -> Self {
        CliError::Usage(s)
    }
}

/// Output of a command: text for stdout and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    pub fn ok(text: impl Into<String>) -> Outcome {
        Outcome { text: text.into(), code: EXIT_OK }
    }

    pub fn violation(text: impl Into<String>) -> Outcome {
        Outcome { text: text.into(), code: EXIT_VIOLATION }
    }
}
