//! File formats and subcommands of the `deforma` command-line tool.

pub mod commands;
pub mod error;
pub mod files;
pub mod format;
pub mod json;

pub use commands::{run, Cli, Verdict};
pub use error::CliError;
