use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = worldline::cli::Cli::parse();
    ExitCode::from(worldline::cli::run(cli))
}
