use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use indexbound_cli::error::{EXIT_OK, EXIT_USAGE};
use indexbound_cli::report::render;
use indexbound_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            return ExitCode::from(code as u8);
        }
    };
    let code = match execute(&cli.command).and_then(|o| Ok((render(&o.report, cli.command.format())?, o.exit))) {
        Ok((text, exit)) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
