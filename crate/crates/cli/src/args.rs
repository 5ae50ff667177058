use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pie_core::identities::IdentityId;

/// Verify weighted partition identities, dump q-series expansions and
/// trace the pairing involution.
///
/// Every option can also be set through a `PIE_*` environment variable;
/// flags take precedence over the environment, which takes precedence over
/// the built-in defaults.
#[derive(Debug, Parser)]
#[command(name = "pie", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format. Defaults to `json` for `verify` and `report-all`,
    /// `csv` for `series` and `text` for `involution`.
    #[arg(long, global = true, value_enum, env = "PIE_FORMAT")]
    pub format: Option<Format>,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true, env = "PIE_OUTPUT")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check one identity, or all of them.
    Verify(VerifyArgs),
    /// Dump the coefficients of a q-series as `power,coefficient` rows.
    Series(SeriesArgs),
    /// Run the pairing involution on `D(n) ∩ C(N)`.
    Involution(InvolutionArgs),
    /// Check every identity in exact mode and every numeric-capable one in
    /// numeric mode.
    ReportAll(CheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Numeric,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Identity tag, e.g. `class_sum` or `THM_2_3`.
    #[arg(long, required_unless_present = "all", conflicts_with = "all")]
    pub id: Option<IdentityId>,

    /// Check every identity that supports the mode.
    #[arg(long)]
    pub all: bool,

    #[arg(long, value_enum, env = "PIE_MODE", default_value = "exact")]
    pub mode: ModeArg,

    #[command(flatten)]
    pub check: CheckArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, env = "PIE_N_MIN", default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=200))]
    pub n_min: u32,

    #[arg(long, env = "PIE_N_MAX", default_value_t = 60, value_parser = clap::value_parser!(u32).range(1..=200))]
    pub n_max: u32,

    /// Exponents: nonnegative integers in exact mode, complex numbers such
    /// as `1.5`, `-1` or `0.5+0.5i` in numeric mode.
    #[arg(long, env = "PIE_Z", value_delimiter = ',', allow_hyphen_values = true)]
    pub z: Vec<String>,

    /// Weights: rationals such as `2/3` in exact mode (used by the
    /// exponential and Bell relations), complex numbers in numeric mode.
    #[arg(long, env = "PIE_C", value_delimiter = ',', allow_hyphen_values = true)]
    pub c: Vec<String>,

    /// Relative tolerance for numeric mode.
    #[arg(long, env = "PIE_TOL", default_value_t = 1e-9)]
    pub tol: f64,

    #[arg(long, env = "PIE_Q_ORDER", default_value_t = 30)]
    pub q_order: usize,

    #[arg(long, env = "PIE_M_MAX", default_value_t = 5)]
    pub m_max: usize,

    /// Largest `k` in the binomial k-fold identity.
    #[arg(long, env = "PIE_K_MAX", default_value_t = 4)]
    pub k_max: usize,

    /// Numeric-mode weights must satisfy `|c| <= radius`.
    #[arg(long, env = "PIE_DISK_RADIUS", default_value_t = pie_core::arith::DEFAULT_DISK_RADIUS)]
    pub disk_radius: f64,

    /// Include wall-clock timings; without this flag `elapsed_ms` is null
    /// and repeated runs produce identical output.
    #[arg(long, env = "PIE_TIMINGS")]
    pub timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesName {
    Entry4,
    #[value(name = "M")]
    M,
    #[value(name = "K")]
    K,
    #[value(name = "A")]
    A,
    Dilcher,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub name: SeriesName,

    #[arg(long, env = "PIE_Q_ORDER", default_value_t = 30)]
    pub order: usize,

    /// `m` for `M` and `K`, `k` for `dilcher`.
    #[arg(long, default_value_t = 1)]
    pub m: u32,

    /// A rational value, or `symbolic` to keep `c` as a variable.
    #[arg(long, default_value = "symbolic", allow_hyphen_values = true)]
    pub c: String,
}

#[derive(Debug, Args)]
pub struct InvolutionArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=200))]
    pub n: u32,

    /// The modulus `N` of the class `C(N)`.
    #[arg(long = "N-divisor", required_unless_present = "sweep")]
    pub divisor: Option<u32>,

    /// Print the step-by-step trace of every pairing.
    #[arg(long)]
    pub trace: bool,

    /// Check the involution for every `n' <= n` and `N <= n'`.
    #[arg(long)]
    pub sweep: bool,
}

impl Cli {
    pub fn format(&self) -> Format {
        self.format.unwrap_or(match self.command {
            Command::Verify(_) | Command::ReportAll(_) => Format::Json,
            Command::Series(_) => Format::Csv,
            Command::Involution(_) => Format::Text,
        })
    }
}
