//! Command-line front end: config loading, the `build`, `kernel`,
//! `spectrum` and `verify` subcommands, and report output.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod verify;
