//! Command-line front end for `maslov-core`: JSON inputs, one subcommand per
//! index family, seeded generators and the self-test runner.

pub mod commands;
pub mod error;
pub mod json;

pub use commands::{execute, Cli};
pub use error::CliError;
