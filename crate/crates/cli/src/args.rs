use clap::{Args, Parser, Subcommand, ValueEnum};

use boxshare::io::poll::DEFAULT_VOTERS;
use boxshare::oracle::DEFAULT_ENUMERATION_CAP;

#[derive(Debug, Parser)]
#[command(
    name = "boxshare",
    version,
    about = "Particles-in-boxes share law toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Out {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

/// `--out`, also spelled `--format` where no input format competes for it.
#[derive(Debug, Args)]
pub struct OutArg {
    #[arg(long = "out", visible_alias = "format", value_enum, default_value_t)]
    pub out: Out,
}

#[derive(Debug, Args)]
pub struct Ensemble {
    #[arg(long)]
    pub boxes: u64,
    #[arg(long)]
    pub particles: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Share table of the law over N boxes.
    Dist {
        #[arg(long)]
        boxes: u64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        alpha: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// List every configuration of P particles in N boxes.
    Enumerate {
        #[command(flatten)]
        ensemble: Ensemble,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Exact occupancy distribution of one box.
    Marginal {
        #[command(flatten)]
        ensemble: Ensemble,
        #[command(flatten)]
        out: OutArg,
    },
    /// Exact conditional occupancy against the truncated share law.
    Deviation {
        #[command(flatten)]
        ensemble: Ensemble,
        #[command(flatten)]
        out: OutArg,
    },
    /// Seeded Monte Carlo histogram of one box's occupancy.
    Sample {
        #[command(flatten)]
        ensemble: Ensemble,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Leading-digit conformance report.
    Benford {
        /// Input file; `-` or absent reads standard input.
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        /// CSV column by header name or 1-based index.
        #[arg(long)]
        column: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        out: Out,
    },
    /// Group shares, Lorenz curve and Gini coefficient.
    Wealth {
        #[arg(long)]
        groups: u64,
        /// Split ranked boxes into bands instead of re-binning.
        #[arg(long)]
        rank_cumulative: bool,
        /// Boxes ranked under --rank-cumulative.
        #[arg(long, default_value_t = 1_000_000)]
        boxes: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Maximum-likelihood alpha from an `n,count` histogram.
    Fit {
        #[arg(long)]
        input: String,
        #[arg(long)]
        boxes: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Poll table comparison; the built-in table when no input is given.
    Poll {
        #[arg(long)]
        input: Option<String>,
        #[arg(long, default_value_t = DEFAULT_VOTERS)]
        voters: f64,
        #[command(flatten)]
        out: OutArg,
    },
}
