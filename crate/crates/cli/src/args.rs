use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qwkb::arith::DEFAULT_PRECISION_BITS;

use crate::error::CliError;
use crate::range::{LevelRange, ScanSpec};

/// Semiclassical eigenvalues and eigenvalue sums of the quartic oscillator.
#[derive(Debug, Parser)]
#[command(name = "qwkb", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub run: RunConfig,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of one family, rows n = 0..=N_MAX.
    Coeff { family: Family, n_max: usize },
    /// Eigenvalue approximations for levels in RANGE (`5`, `0..10`, inclusive).
    Eigen {
        range: LevelRange,
        method: EigenArg,
        /// Order-sensitivity block: `L-2..L+2` (relative to the least-addition
        /// order) or absolute `11..15`; wkb and cwkb only.
        #[arg(long)]
        scan: Option<ScanSpec>,
    },
    /// Approximations to the sum of the lowest N eigenvalues for N in RANGE.
    Sum {
        range: LevelRange,
        method: SumArg,
        /// Order-sensitivity block around the even least-addition order;
        /// swkb, cswkb and hyp only.
        #[arg(long)]
        scan: Option<ScanSpec>,
        /// Subdominant sum correction used by cswkb (default: exact, or asym
        /// inside a --scan block).
        #[arg(long, value_enum)]
        sd_sum: Option<SdArg>,
    },
    /// Compare regenerated values against the embedded tables.
    Verify {
        suite: Suite,
        /// Exit 0 when every mismatch lies in the documented table-drift region.
        #[arg(long)]
        allow_documented: bool,
        /// Directory caching the computed reference spectrum.
        #[arg(long, env = "QWKB_CACHE_DIR")]
        cache_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    A,
    B,
    D,
    H,
    C,
    Q,
    F,
    #[value(name = "K", alias = "k")]
    K,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EigenArg {
    Wkb,
    Bcwkb,
    Lin,
    Cwkb,
    Sd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SumArg {
    Swkb,
    Gexp,
    Cswkb,
    Hyp,
    Sd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SdArg {
    Exact,
    Asym,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Coeffs,
    Eigen,
    Sums,
    Oracle,
    All,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Empirical,
    #[default]
    Least,
    Asym,
}

/// Options shared by every subcommand.
#[derive(Clone, Debug, Args)]
pub struct RunConfig {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION_BITS)]
    pub precision_bits: u32,
    /// Significant digits of printed values.
    #[arg(long, global = true, default_value_t = 42)]
    pub digits: usize,
    /// Significant digits of printed errors and deviations.
    #[arg(long, global = true, default_value_t = 8)]
    pub error_digits: usize,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub format: Format,
    /// Truncation-order strategy where no explicit order is given.
    #[arg(long, global = true, value_enum, default_value_t)]
    pub strategy: Strategy,
    /// Truncation order M of the main series.
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// Truncation order M' of the subdominant series.
    #[arg(long, global = true)]
    pub sd_order: Option<usize>,
    /// Write the table here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    /// Largest digit count the precision supports.
    pub fn max_digits(&self) -> usize {
        ((self.precision_bits as f64 * 0.301).floor() as i64 - 5).max(0) as usize
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.digits == 0 || self.digits > self.max_digits() {
            return Err(CliError::Usage(format!(
                "--digits {} outside 1..={} allowed at {} bits",
                self.digits,
                self.max_digits(),
                self.precision_bits
            )));
        }
        if self.error_digits == 0 || self.error_digits > self.digits {
            return Err(CliError::Usage(format!(
                "--error-digits {} outside 1..={}",
                self.error_digits, self.digits
            )));
        }
        Ok(())
    }
}
