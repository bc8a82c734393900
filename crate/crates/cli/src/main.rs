use std::process::ExitCode;

use aplab_cli::args::Cli;
use aplab_cli::run::EXIT_INVALID;
use clap::error::ErrorKind;
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_INVALID as u8),
            };
        }
    };
    let cfg = match cli.resolve() {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("aplab: {msg}");
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    ExitCode::from(aplab_cli::run(&cfg) as u8)
}
