//! File formats, parameter sweeps and the command-line front end for
//! [`kway_core`].

pub mod cli;
pub mod columns;
pub mod commands;
pub mod error;
pub mod format;
pub mod grid;
pub mod statefile;
pub mod sweep;

pub use error::{CliError, CliResult, ErrorKind};
