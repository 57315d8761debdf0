//! `quadbound`: tables of quadrature error bounds, extremal adversaries,
//! concurrent sweeps and the acceptance suite.
//!
//! Exit status is 0 on success, 1 when a verification or adversary check
//! fails (or a computation breaks down), and 2 on usage errors.

// `!(x > 0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod report;

use std::process::ExitCode;

use clap::Parser;
use quadbound_core::verify::{run_all, VerifyOptions};

use commands::{run_adversary, run_bounds, run_sweep, CliError, CliResult, Report};
use config::{Cli, Command, RunConfig};

const FAILURE: u8 = 1;
const USAGE: u8 = 2;

fn emit(report: Report, cfg: &RunConfig) -> CliResult<ExitCode> {
    report::write_records(&report.records, cfg.format, cfg.out.as_deref())?;
    for f in &report.failures {
        eprintln!("check failed: {f}");
    }
    Ok(if report.failures.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(FAILURE) })
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Bounds(a) => {
            let cfg = RunConfig::from_common(&a).map_err(CliError::Usage)?;
            emit(run_bounds(&cfg)?, &cfg)
        }
        Command::Sweep(a) => {
            let cfg = RunConfig::from_common(&a).map_err(CliError::Usage)?;
            emit(run_sweep(&cfg)?, &cfg)
        }
        Command::Adversary(a) => {
            let cfg = RunConfig::from_common(&a.common).map_err(CliError::Usage)?;
            emit(run_adversary(&cfg, a.export.as_deref(), a.samples)?, &cfg)
        }
        Command::Verify(a) => {
            if !(a.tol > 0.0) || !a.tol.is_finite() {
                return Err(CliError::Usage(format!("--tol must be positive, got {}", a.tol)));
            }
            let opts = VerifyOptions {
                tol: a.tol,
                seed: a.seed,
                perturb_gamma: a.perturb_gamma,
            };
            let results = run_all(&opts);
            for r in &results {
                println!("{r}");
            }
            if let Some(out) = &a.out {
                report::write_verify(&results, a.format, out)?;
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            println!("{} of {} criteria passed", results.len() - failed, results.len());
            Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(FAILURE) })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(USAGE)
        }
        Err(CliError::Failure(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(FAILURE)
        }
    }
}
