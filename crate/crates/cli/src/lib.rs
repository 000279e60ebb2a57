//! Library side of the `kgraph` binary: the `.kg` format, JSON export, and
//! the subcommand bodies.

pub mod commands;
pub mod export;
pub mod format;

pub use commands::{CliError, Report};
pub use format::{parse, print, KGraphFile, ParseError};
