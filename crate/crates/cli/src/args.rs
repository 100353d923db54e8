use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "twlab", version, about = "Tracy-Widom distributions and random-matrix Monte Carlo")]
pub struct Cli {
    /// Painlevé table cache [env: TWLAB_CACHE] [default: ./tw_cache.bin]
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,

    /// Worker threads for sampling (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// CDF and density columns on a grid of s values
    Table(TableArgs),
    /// Mean, standard deviation, skewness and excess kurtosis of F_β
    Moments(MomentsArgs),
    /// Draw scaled statistics from a stochastic model
    Sample(SampleArgs),
    /// KS distance and moments of samples against F_β
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BetaChoice {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "4")]
    Four,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SingleBeta {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "4")]
    Four,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum TableFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub beta: BetaChoice,
    #[arg(long, allow_hyphen_values = true)]
    pub from: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub to: f64,
    #[arg(long)]
    pub step: f64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: TableFormat,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub beta: BetaChoice,
    /// Emit JSON instead of a text table
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// goe | gue | gse | wigner | lis | queue | growth
    #[arg(long)]
    pub model: Option<String>,
    /// Matrix dimension, permutation size, or number of stations
    #[arg(long)]
    pub n: Option<usize>,
    /// Customers (queue)
    #[arg(long)]
    pub k: Option<usize>,
    /// Time steps (growth)
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Wigner entry law: rademacher | uniform
    #[arg(long, default_value = "rademacher")]
    pub entries: String,
    /// Queue service law: exponential | geometric | deterministic
    #[arg(long, default_value = "exponential")]
    pub service: String,
    /// Queue scaling: brownian | cube-root
    #[arg(long, default_value = "brownian")]
    pub scaling: String,
    /// Cube-root centering constant (estimated when omitted)
    #[arg(long)]
    pub c1: Option<f64>,
    /// Cube-root scale constant (estimated when omitted)
    #[arg(long)]
    pub c2: Option<f64>,
    /// Growth site-parameter law: const:P | uniform:LO,HI | beta:A,B
    #[arg(long, default_value = "const:0.5")]
    pub p_law: String,
    /// Growth: one environment shared by all samples
    #[arg(long)]
    pub quenched: bool,
    /// Growth sweep: synchronous | left-to-right
    #[arg(long, default_value = "synchronous")]
    pub sweep: String,
    /// Growth: reported site
    #[arg(long, default_value_t = 0)]
    pub probe: usize,
    /// Gaussian ensembles: tridiagonal β-model instead of dense matrices
    #[arg(long)]
    pub tridiagonal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum SampleFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Output file (default: standard output)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: SampleFormat,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// SampleSet JSON file; otherwise samples are drawn from the model flags
    #[arg(long, conflicts_with = "model")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum)]
    pub beta: SingleBeta,
}
