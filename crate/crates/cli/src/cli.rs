use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use purify_core::protocols::{DEFAULT_K_MAX, DEFAULT_M_MAX};

#[derive(Debug, Parser)]
#[command(name = "purify", version, about = "Yield analysis for entanglement purification protocols")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Yield of every protocol over a Werner fidelity grid (or one Bell-diagonal input)
    Curve(CurveArgs),
    /// Fidelity intervals where the four-pair protocol strictly beats its competitors
    Crossover(CrossoverArgs),
    /// Run an exact verification and report per check
    Verify(VerifyArgs),
    /// Dump the 64-row four-pair pass table as CSV
    Table(TableArgs),
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 0.25)]
    pub f_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub f_max: f64,
    #[arg(long, default_value_t = 0.001)]
    pub step: f64,
    /// Largest number of recurrence rounds searched
    #[arg(long, default_value_t = DEFAULT_K_MAX)]
    pub k_max: usize,
    /// Largest block size searched for the block method
    #[arg(long, default_value_t = DEFAULT_M_MAX)]
    pub m_max: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Comma-separated subset of hashing,recurrence,ms,ls,combined
    #[arg(long, value_delimiter = ',', default_value = "hashing,recurrence,ms,ls,combined")]
    pub protocols: Vec<String>,
    /// Evaluate a single Bell-diagonal input p00,p01,p10,p11 instead of the Werner grid
    #[arg(long)]
    pub dist: Option<String>,
    #[arg(long, value_enum, default_value_t = CurveFormat::Csv)]
    pub format: CurveFormat,
}

#[derive(Debug, Args)]
pub struct CrossoverArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Competitors the four-pair protocol must strictly beat
    #[arg(long, value_delimiter = ',', default_value = "recurrence,ms")]
    pub protocols: Vec<String>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    /// Also print the per-point winner table
    #[arg(long)]
    pub points: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// table, werner-closed-form, general-closed-form, recurrence, ms, or all
    pub target: String,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}
