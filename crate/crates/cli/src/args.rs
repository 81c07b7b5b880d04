use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Count and estimate reduced words and Hecke words of permutations.
///
/// Permutations are given in one-line notation (`5,4,2,7,8,3,1,6`) or, with
/// `--code`, as Lehmer codes. Partitions are comma-separated parts; skew
/// shapes are written `outer/inner`.
#[derive(Debug, Parser)]
#[command(name = "redwords", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Read permutation arguments as Lehmer codes.
    #[arg(long, global = true)]
    pub code: bool,

    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Significant digits for estimates in text output.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=60))]
    pub digits: u32,

    /// Worker threads for trials and subtree expansion. Results do not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,

    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact number of reduced words, via the transition tree.
    CountRed {
        perm: String,
        /// Use the slow descent-recursion enumerator instead.
        #[arg(long, conflicts_with = "tree_out")]
        oracle: bool,
        /// Print the transition tree instead of the leaf summary.
        #[arg(long, value_enum)]
        tree_out: Option<TreeFormat>,
        #[arg(long, default_value_t = redwords::transition::DEFAULT_NODE_CAP)]
        node_cap: u64,
    },
    /// Edelman-Greene statistic (number of leaves) and minimal branching depth.
    Eg {
        perm: String,
        #[arg(long, default_value_t = redwords::transition::DEFAULT_NODE_CAP)]
        node_cap: u64,
    },
    /// Exact number of Hecke words of a given length.
    CountHecke {
        perm: String,
        #[arg(long)]
        len: usize,
        #[arg(long, default_value_t = redwords::hecke::DEFAULT_MEMO_CAP)]
        memo_cap: u64,
    },
    /// Standard Young tableaux of a shape (hook-length formula).
    FShape { partition: String },
    /// Standard Young tableaux of a skew shape (determinant formula).
    FSkew { shape: String },
    /// Standard set-valued tableaux of a shape with entries 1..len.
    FSetvalued {
        partition: String,
        #[arg(long)]
        len: usize,
    },
    /// Standard set-valued tableaux of a skew shape with entries 1..len.
    FSkewSetvalued {
        shape: String,
        #[arg(long)]
        len: usize,
        #[arg(long, default_value_t = redwords::hecke::DEFAULT_MEMO_CAP)]
        memo_cap: u64,
    },
    /// Importance-sampling estimate of a reduced-word or Hecke-word count.
    Estimate {
        #[arg(value_enum)]
        target: Target,
        perm: String,
        /// Hecke word length; required for `hecke`.
        #[arg(long)]
        len: Option<usize>,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Euler characteristic of a Brill-Noether variety.
    EulerBn {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: usize,
        /// Weakly increasing, r+1 comma-separated entries.
        #[arg(long)]
        alpha: String,
        /// Weakly increasing, r+1 comma-separated entries.
        #[arg(long)]
        beta: String,
        /// Estimate by sampling instead of computing exactly.
        #[arg(long)]
        estimate: bool,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, default_value_t = redwords::hecke::DEFAULT_MEMO_CAP)]
        memo_cap: u64,
    },
    /// Histogram of the Edelman-Greene statistic over S_n.
    EgDistribution {
        #[arg(long)]
        n: usize,
        /// Visit every permutation.
        #[arg(long, conflicts_with = "samples", required_unless_present = "samples")]
        exhaustive: bool,
        /// Number of uniformly random permutations to draw.
        #[arg(long, requires = "seed")]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = redwords::transition::DEFAULT_NODE_CAP)]
        node_cap: u64,
    },
    /// Rothe diagram with its essential set, accessible box and pivots.
    Diagram { perm: String },
}

#[derive(Debug, Clone, Args)]
pub struct SamplingArgs {
    /// Estimator: y (transition walk), z (Hecke peeling) or h (hybrid).
    #[arg(long, value_enum)]
    pub alg: Option<Alg>,
    /// Samples per trial.
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
    #[arg(long, default_value_t = 12)]
    pub trials: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TreeFormat {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Red,
    Hecke,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Alg {
    Y,
    Z,
    H,
}

impl From<Alg> for redwords::Algorithm {
    fn from(alg: Alg) -> Self {
        match alg {
            Alg::Y => redwords::Algorithm::Y,
            Alg::Z => redwords::Algorithm::Z,
            Alg::H => redwords::Algorithm::H,
        }
    }
}
