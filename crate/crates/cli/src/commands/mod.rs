mod coeff;
mod eigen;
mod sum;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use qwkb::arith::{to_sci, BigReal};
use qwkb::eigen::TruncationStrategy;
use qwkb::oracle::embedded_reference;

use crate::args::{Cli, Command, RunConfig, Strategy};
use crate::error::CliError;
use crate::table::{Cell, Table};

pub fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let cfg = &cli.run;
    cfg.validate()?;
    let (table, code) = match &cli.command {
        Command::Coeff { family, n_max } => (coeff::run(*family, *n_max, cfg)?, ExitCode::SUCCESS),
        Command::Eigen {
            range,
            method,
            scan,
        } => (
            eigen::run(*range, *method, scan.as_ref(), cfg)?,
            ExitCode::SUCCESS,
        ),
        Command::Sum {
            range,
            method,
            scan,
            sd_sum,
        } => (
            sum::run(*range, *method, scan.as_ref(), *sd_sum, cfg)?,
            ExitCode::SUCCESS,
        ),
        Command::Verify {
            suite,
            allow_documented,
            cache_dir,
        } => verify::run(*suite, *allow_documented, cache_dir.as_deref(), cfg)?,
    };
    emit(&table, cfg)?;
    Ok(code)
}

fn emit(table: &Table, cfg: &RunConfig) -> Result<(), CliError> {
    let text = table.render(cfg.format)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn value_cell(x: &BigReal, cfg: &RunConfig) -> Cell {
    Cell::Num(to_sci(x, cfg.digits))
}

fn error_cell(x: Option<&BigReal>, cfg: &RunConfig) -> Cell {
    x.map_or(Cell::Empty, |x| Cell::Num(to_sci(x, cfg.error_digits)))
}

fn core_strategy(s: Strategy) -> TruncationStrategy {
    match s {
        Strategy::Least => TruncationStrategy::LeastAddition,
        Strategy::Asym => TruncationStrategy::Asymptotic,
        Strategy::Empirical => {
            TruncationStrategy::Empirical(std::sync::Arc::new(embedded_reference()))
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
