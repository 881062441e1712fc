use std::io::Write;
use std::process::ExitCode;

use clap::{CommandFactory, Parser};
use tetramer_cli::{common, run, Cli, Failure};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli.command) {
        Ok(out) => out,
        Err(Failure::Usage(msg)) => {
            Cli::command().error(clap::error::ErrorKind::ValueValidation, msg).exit();
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(3);
        }
    };

    let written = match &common(&cli.command).out {
        Some(path) => std::fs::write(path, &out.text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().lock().write_all(out.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        eprintln!("error: cannot write output: {msg}");
        return ExitCode::from(3);
    }
    if out.passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("verification failed");
        ExitCode::from(1)
    }
}
