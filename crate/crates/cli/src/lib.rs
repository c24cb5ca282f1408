//! Command-line front end for `linkless`: subcommand definitions, JSON
//! reports and the acceptance driver.

pub mod acceptance;
mod commands;

use linkless::graph::GraphError;
use linkless::minor::MinorError;
use linkless::moves::MoveError;
use linkless::spatial::SpatialError;
use thiserror::Error;

pub use commands::{run, Cli, Outcome};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or unreadable input; exit code 2.
    #[error("{0}")]
    Input(String),
    /// A check ran and failed; exit code 1.
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Check(_) => 1,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<MoveError> for CliError {
    fn from(e: MoveError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<MinorError> for CliError {
    fn from(e: MinorError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SpatialError> for CliError {
    fn from(e: SpatialError) -> Self {
        match e {
            SpatialError::Inconsistent(_) => CliError::Check(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
