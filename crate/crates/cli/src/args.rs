use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hessmult", version, about = "Tabloid multiplicities of regular semisimple Hessenberg varieties")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Largest n accepted by any exhaustive enumeration.
    #[arg(long, global = true, default_value_t = 9, value_parser = clap::value_parser!(u64).range(1..=20))]
    pub cap: u64,

    /// Directory for cached A matrices.
    #[arg(long, global = true, env = "HESSMULT_CACHE")]
    pub cache_dir: Option<PathBuf>,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for the multiplicities c_{μ,i} of one Hessenberg function.
    Solve {
        #[arg(long)]
        h: String,
        /// Print a single cohomological degree.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Print (and cache) the A matrix for n.
    Amatrix {
        #[arg(long)]
        n: usize,
        /// Ignore and overwrite any cached copy.
        #[arg(long)]
        recompute: bool,
    },
    /// Run the verification checks for one h or for every h on [n].
    Verify(VerifyArgs),
    /// Evaluate the sink-set induction for μ with ht + 1 parts.
    Induct {
        #[arg(long)]
        h: String,
        #[arg(long)]
        mu: String,
    },
    /// Print the root-theoretic and graph data of h.
    Info {
        #[arg(long)]
        h: String,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, conflicts_with = "all_n", required_unless_present = "all_n")]
    pub h: Option<String>,

    /// Scan every Hessenberg function on [n].
    #[arg(long)]
    pub all_n: Option<usize>,

    /// Run only these checks (repeatable or comma separated).
    #[arg(long = "check", value_delimiter = ',')]
    pub checks: Vec<String>,

    /// Drop these checks from the selection.
    #[arg(long = "skip", value_delimiter = ',')]
    pub skip: Vec<String>,

    /// Run every check regardless of n.
    #[arg(long, conflicts_with = "checks")]
    pub all_checks: bool,
}
