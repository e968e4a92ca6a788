//! Command-line front end, file formats and experiment harness for
//! [`incoherence_core`].

pub mod commands;
pub mod error;
pub mod experiment;
pub mod format;

pub use commands::{run, Cli};
pub use error::CliError;
