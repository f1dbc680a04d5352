mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => match commands::emit(&cli, &out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(&e),
        },
        Err(e) => fail(&e),
    }
}

fn fail(e: &qukit::Error) -> ExitCode {
    let _ = writeln!(std::io::stderr(), "error: {}: {e}", e.kind());
    ExitCode::from(1)
}
