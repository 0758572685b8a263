//! `papprox`: approximation values, expansions, oracle checks and sweeps.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! domain errors.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Value(a) => commands::value(a),
        Command::Asymptote(a) => commands::asymptote(a),
        Command::Verify(a) => commands::verify(a),
        Command::Cesaro(a) => commands::cesaro(a),
        Command::Sweep(a) => commands::sweep(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
