//! `wllab`: batch driver for refinement runs, partition comparison and
//! manifest-driven suites.

mod args;
mod commands;
mod docs;
mod failure;
mod manifest;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use failure::Failure;

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Refine(a) => commands::refine(a),
        Command::Compare(a) => commands::compare(a),
        Command::Suite(a) => commands::suite(a),
        Command::Gen(a) => commands::gen(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { failure::USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("wllab: {f}");
            ExitCode::from(f.code())
        }
    }
}
