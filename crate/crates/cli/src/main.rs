use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    multiex_cli::run(multiex_cli::Cli::parse())
}
