mod args;
mod commands;
mod error;
mod range;
mod table;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qwkb: {e}");
            e.exit_code()
        }
    }
}
