use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use fastdice::cli::{execute, Cli, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::from_cli(Cli::parse());
    match execute(&config) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
