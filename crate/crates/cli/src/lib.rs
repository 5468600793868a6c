//! Command-line front end for the service graph toolkit.

pub mod bundle;
pub mod commands;
pub mod config;
pub mod error;
pub mod pipeline;

pub use error::{CliError, ExitCode};
pub use pipeline::{run_pipeline, Manifest};
