use std::path::PathBuf;

use thiserror::Error;

/// Failures of a command. Library errors that signal a mathematical failure
/// (a non-associative input, an invalid deformation, …) exit with status 1;
/// everything else exits with status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: invalid JSON: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Core(#[from] deforma_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use deforma_core::Error as E;
        match self {
            CliError::Core(
                E::NotAssociative { .. }
                | E::InvalidDeformation { .. }
                | E::NotACocycle
                | E::BaseNotCommutative { .. }
                | E::SourceNotMc { .. },
            ) => 1,
            _ => 2,
        }
    }
}

pub fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

pub type Result<T> = std::result::Result<T, CliError>;
