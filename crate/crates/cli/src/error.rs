//! Error type for the command-line front end.
//!
//! Every variant maps to exit status 2; membership verdicts themselves are
//! reported through exit codes 0 and 1, never as errors.

use std::path::PathBuf;

/// Errors surfaced by file handling, literal parsing and argument checking.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot write `{path}`: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },

    /// The file is not well-formed JSON or does not match the schema.
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    /// The file is valid JSON but structurally inconsistent.
    #[error("invalid system file: {0}")]
    File(String),

    /// A scalar literal could not be parsed or is out of the supported
    /// range.
    #[error("invalid number literal {0}")]
    Number(String),

    /// A command-line argument failed validation.
    #[error("invalid argument: {0}")]
    Arg(String),

    #[error(transparent)]
    Core(#[from] qlinset_core::Error),
}
