use std::io;
use std::process::ExitCode;

use clap::Parser;
use fig8_cli::{run, Cli, ERROR_EXIT};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    match run(&cli, &mut stdout.lock()) {
        Ok(status) => ExitCode::from(status.exit_code()),
        Err(e) => {
            eprintln!("fig8: {e}");
            ExitCode::from(ERROR_EXIT)
        }
    }
}
