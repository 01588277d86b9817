//! `mmvc`: exact solving, kernels, partitions, approximation and reductions
//! for Maximum Minimal Vertex Cover, reported as JSON.

mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;

use crate::commands::Command;
use crate::report::{emit, error_info, Report};

#[derive(Debug, Parser)]
#[command(name = "mmvc", version, about)]
struct Cli {
    /// Vertex cap for exact oracles.
    #[arg(long, global = true, env = "MMVC_ORACLE_CAP")]
    oracle_cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = Report::new(std::env::args().collect());
    let code = match commands::run(&cli.command, cli.oracle_cap, &mut report) {
        Ok(code) => code,
        Err(e) => {
            let info = error_info(&e);
            let code = info.exit_code;
            report.error = Some(info);
            code
        }
    };
    emit(&report, code)
}
