//! `purify` command-line interface.
//!
//! ```bash
//! purify curve --f-min 0.5 --f-max 1 --step 0.01 --format json
//! purify crossover --f-min 0.5 --f-max 1.0
//! purify verify all
//! purify table --output table.csv
//! ```
//!
//! Exit status: 0 on success, 1 when a verification fails (or on I/O
//! errors), 2 on invalid arguments.

use std::fmt;
use std::process::ExitCode;

use clap::Parser;

mod cli;
mod commands;
mod output;

use cli::{Cli, Command};

/// Bad command-line input; maps to exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Curve(args) => commands::curve(args),
        Command::Crossover(args) => commands::crossover(args),
        Command::Verify(args) => commands::verify_cmd(args),
        Command::Table(args) => commands::table(args),
    };
    match result {
        Ok(code) => code,
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
