//! Library behind the `csmoute` command-line tool: dataset loading,
//! experiment configuration, the nested benchmark, ratio sweeps and report
//! writing.

pub mod benchmark;
pub mod commands;
pub mod compare;
pub mod config;
pub mod data;
pub mod error;
pub mod reports;
pub mod resample;
pub mod sweep;

pub use error::{CliError, CliResult, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_OK, EXIT_PARTIAL};
