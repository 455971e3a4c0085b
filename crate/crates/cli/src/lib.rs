pub mod commands;
pub mod dsl;
pub mod report;

pub use commands::{execute, run_command, Args, CliError, Format, Options, Session, FIXTURES};
