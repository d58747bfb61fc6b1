use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use nodoid_cli::commands::run;
use nodoid_cli::config::{Cli, RunConfig};
use nodoid_cli::CliError;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = RunConfig::resolve(cli.command.kind(), cli.command.flags()).and_then(|cfg| {
        let outcome = run(&cfg)?;
        match &cfg.out {
            Some(path) => std::fs::write(path, &outcome.body).map_err(|e| {
                CliError::Numerical(format!("cannot write {}: {e}", path.display()))
            })?,
            None => {
                let _ = std::io::stdout().write_all(outcome.body.as_bytes());
            }
        }
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            for note in &outcome.notes {
                eprintln!("{note}");
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("nodoid: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
