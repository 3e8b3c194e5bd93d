//! Command-line front end: evaluate quantization functions, sample curves,
//! find zeros, and fit and predict halo spectra.
//!
//! Exit codes: 0 success, 1 i/o or replay mismatch, 2 usage, schema or
//! version errors, 3 evaluation at a pole, 4 fit or root-finding failure.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod error;
mod manifest;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::RunCommand;
use error::{exit, CliError};
use manifest::RunManifest;

#[derive(Parser, Debug)]
#[command(name = "s2contact", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    #[command(flatten)]
    Run(RunCommand),
    /// Re-run the command recorded in a manifest or report.
    Replay(ReplayArgs),
}

#[derive(Args, Debug)]
struct ReplayArgs {
    manifest: PathBuf,
    /// Compare regenerated files with the ones on disk instead of overwriting them.
    #[arg(long)]
    check: bool,
}

fn write_outputs(outcome: &commands::Outcome) -> Result<(), CliError> {
    for (path, text) in &outcome.files {
        output::write_atomic(path, text)?;
    }
    print!("{}", outcome.stdout);
    Ok(())
}

fn replay(args: &ReplayArgs) -> Result<(), CliError> {
    let manifest = RunManifest::from_json_text(&std::fs::read_to_string(&args.manifest)?)?;
    let outcome = manifest.to_command()?.run()?;
    if !args.check {
        return write_outputs(&outcome);
    }
    for (path, text) in &outcome.files {
        let on_disk = std::fs::read_to_string(path)?;
        if &on_disk != text {
            return Err(CliError::Mismatch(format!("{} differs", path.display())));
        }
    }
    print!("{}", outcome.stdout);
    eprintln!("replay matches {} file(s)", outcome.files.len());
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run(cmd) => write_outputs(&cmd.run()?),
        Command::Replay(args) => replay(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::from(exit::OK as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
