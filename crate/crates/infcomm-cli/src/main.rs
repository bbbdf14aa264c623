use std::process::ExitCode;
use std::sync::atomic::Ordering;

use clap::Parser;
use infcomm_cli::cli::Cli;
use infcomm_cli::commands::{run, INTERRUPTED};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Err(e) = ctrlc::set_handler(|| INTERRUPTED.store(true, Ordering::Relaxed)) {
        eprintln!("warning: cannot install interrupt handler: {e}");
    }
    match run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("infcomm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
