//! `permcount`: exact counts of permutation polynomials over finite fields.
//!
//! Exit codes: 0 success, 2 identity or verification failure, 3 guard or
//! cap refusal, 4 bad input.

mod args;
mod commands;
mod report;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind as ClapErrorKind;
use clap::Parser;
use permcount::{Error, ErrorKind};

use args::{Cli, Command, Format};
use report::{json_text, Report};

const EXIT_IDENTITY: u8 = 2;
const EXIT_GUARD: u8 = 3;
const EXIT_INPUT: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    match e.kind() {
        ErrorKind::Identity => EXIT_IDENTITY,
        ErrorKind::Guard => EXIT_GUARD,
        ErrorKind::Input => EXIT_INPUT,
    }
}

fn render(report: &Report, format: Format) -> Result<String, String> {
    match format {
        Format::Json => Ok(json_text(&report.to_json())),
        Format::Csv => report.to_csv().map_err(|e| e.to_string()),
        Format::Text => Ok(report.to_text()),
    }
}

fn emit(text: &str, out: Option<&std::path::Path>) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| format!("cannot write output: {e}"))
        }
    }
}

fn run(cli: Cli) -> Result<u8, (u8, String)> {
    let args = cli.command.args();
    let cfg = args.config();
    let fail = |e: Error| (exit_code(&e), e.to_string());
    let (report, refusals) = match &cli.command {
        Command::Count(a) => (commands::count(a, &cfg).map_err(fail)?, Vec::new()),
        Command::Table(a) => (commands::table(a, &cfg).map_err(fail)?, Vec::new()),
        Command::Verify(a) => (commands::verify(a, &cfg).map_err(fail)?, Vec::new()),
        Command::Bench(a) => {
            let b = commands::bench(a, &cfg).map_err(fail)?;
            (b.report, b.refusals)
        }
    };
    let text = render(&report, args.format).map_err(|e| (EXIT_INPUT, e))?;
    emit(&text, args.out.as_deref()).map_err(|e| (EXIT_INPUT, e))?;

    for c in report.checks.iter().filter(|c| !c.ok) {
        eprintln!("permcount {}: check {} FAILED", cli.command.name(), c.name);
    }
    for r in &refusals {
        eprintln!("permcount bench: skipped {r}");
    }
    Ok(if !report.all_ok() {
        EXIT_IDENTITY
    } else if !refusals.is_empty() {
        EXIT_GUARD
    } else {
        0
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_INPUT),
            };
        }
    };
    let command = cli.command.name();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("permcount {command}: {msg}");
            ExitCode::from(code)
        }
    }
}
