//! `lagweyl` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or I/O, 2 numerical resolution, 3 class violation.

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use lagweyl::transform::DEFAULT_RULE_ORDER;
use lagweyl::Error;

use args::{Cli, Command};
use commands::{Context, Output};

const RULE_ORDER_ENV: &str = "LAGWEYL_RULE_ORDER";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    /// A check failed; the partial output is still printed.
    #[error("{1}")]
    Numerical(Output, String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(..) => 2,
            CliError::Core(e) => match e {
                Error::NoConvergence { .. }
                | Error::UnderResolved(_)
                | Error::InsufficientData { .. }
                | Error::DerivativeInstability { .. } => 2,
                Error::ClassViolation(_) => 3,
                _ => 1,
            },
        }
    }
}

fn rule_order(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(RULE_ORDER_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{RULE_ORDER_ENV}=`{v}` is not a rule order"))),
        Err(_) => Ok(DEFAULT_RULE_ORDER),
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let ctx = Context {
        rule_order: rule_order(cli.rule_order)?,
        format: cli.format,
    };
    match &cli.command {
        Command::Expand(a) => commands::expand(&ctx, a),
        Command::Classify(a) => commands::classify_cmd(&ctx, a),
        Command::Transform(a) => commands::transform(&ctx, a),
        Command::Weyl { action } => commands::weyl(&ctx, action),
        Command::Report(a) => commands::report(&ctx, a),
    }
}

fn flush(out: &Output) -> Result<(), CliError> {
    for (path, text) in &out.files {
        std::fs::write(path, text).map_err(Error::from)?;
    }
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::io::stdout().flush().map_err(Error::from)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = run(&cli).and_then(|out| flush(&out));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if let CliError::Numerical(out, _) = &err {
                let _ = flush(out);
            }
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
