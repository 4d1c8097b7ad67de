use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = dext::cli::Cli::parse();
    match dext::cli::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
