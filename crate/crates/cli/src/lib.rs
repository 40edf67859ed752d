//! File format, reference loading and command dispatch for the
//! `lierinehart` command-line tool.

pub mod cli;
pub mod commands;
pub mod error;
pub mod format;
pub mod load;

pub use cli::Cli;
pub use commands::{run, Outcome};
pub use error::{CliError, EXIT_INVALID, EXIT_OK, EXIT_USAGE};
