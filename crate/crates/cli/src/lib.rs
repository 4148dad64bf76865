//! Batch interface over the groupoid libraries: entity files, subcommands
//! and reports with a stable key order.

pub mod acceptance;
pub mod commands;
pub mod error;
pub mod report;
pub mod workspace;

pub use commands::{run, Cli, Command};
pub use error::{CliError, Result};
pub use report::{Format, Report};
pub use workspace::Workspace;
