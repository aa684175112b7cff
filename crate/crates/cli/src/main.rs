use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = teich_cli::args::Cli::parse();
    ExitCode::from(teich_cli::run(cli))
}
