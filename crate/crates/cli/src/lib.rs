//! Command-line front end: job parsing, report assembly and rendering.

pub mod args;
pub mod corpus;
pub mod error;
pub mod report;
pub mod run;
pub mod table;
pub mod verify;

pub use args::{Cli, Command, Format};
pub use error::{CliError, CliResult};
pub use report::Report;
pub use run::{execute, Outcome};
