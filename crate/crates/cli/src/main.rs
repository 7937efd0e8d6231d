//! `boxshare` command-line tool.
//!
//! Exit status: 0 on success, 1 on invalid arguments or parameters, 2 on
//! unreadable or malformed input.

mod args;
mod commands;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use boxshare::Error;

fn exit_status(err: &Error) -> u8 {
    match err {
        Error::Io(_) | Error::Parse(_) => 2,
        Error::Parameter(_) | Error::Domain(_) | Error::Resource { .. } | Error::Fit(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(mut text) => {
            if !text.ends_with('\n') {
                text.push('\n');
            }
            let mut stdout = std::io::stdout().lock();
            match stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
            {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("boxshare: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            eprintln!("boxshare: {e}");
            ExitCode::from(exit_status(&e))
        }
    }
}
