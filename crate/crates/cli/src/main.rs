use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use cyb_cli::{execute, Cli, RunConfig};

fn main() -> ExitCode {
    let cfg: RunConfig = Cli::parse().into();
    let outcome = execute(&cfg);
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.exit_code as u8)
}
