//! Library side of the `homaut` command-line tool: configuration, result tables, and the
//! subcommands.

pub mod commands;
pub mod config;
pub mod glie;
pub mod selftest;
pub mod table;

pub use commands::{run, COMMANDS};
pub use config::{Format, RunConfig};
pub use glie::truncated_g;
pub use table::ResultTable;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0}")]
    Unstable(String),
    #[error("computation failed: {0}")]
    Compute(String),
    #[error("selftest failed: {}", .1.join(", "))]
    SelftestFailed(Box<ResultTable>, Vec<String>),
}

impl CliError {
    /// 2 for validation errors, 3 for stability or divergence errors, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Unstable(_) => 3,
            CliError::Compute(_) | CliError::SelftestFailed(..) => 1,
        }
    }
}
