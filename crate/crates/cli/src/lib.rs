//! Configuration, file formats and subcommands for the `iab` scenario runner.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod units;

pub use error::CliError;
