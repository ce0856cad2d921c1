use std::process::ExitCode;

use clap::Parser;
use qfeedback::cli::{main_with, Args};

fn main() -> ExitCode {
    let args = Args::parse();
    match main_with(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qfeedback: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
