//! Command-line front end: argument parsing, input syntax, commands,
//! suites and reports.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod gersten;
pub mod input;
pub mod report;
pub mod suites;

pub use cli::{run, Cli, Command};
pub use config::{Bounds, Format, RunConfig};
pub use error::{CliError, CliResult};
pub use report::{Check, Report};
