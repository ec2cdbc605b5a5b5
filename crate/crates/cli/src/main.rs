use std::process::ExitCode;

use clap::Parser;
use clifford_prym_cli::{execute, Cli};

fn main() -> ExitCode {
    execute(Cli::parse())
}
