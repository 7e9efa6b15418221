//! Command-line front end for the monotone-subset solvers.

pub mod commands;
pub mod error;
pub mod format;

pub use commands::{run, Cli};
pub use error::CliError;
