mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::CliError;

#[derive(Parser, Debug)]
#[command(name = "fsgraph", version, about = "Friends-and-strangers graphs of bipartite pairs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for randomized subcommands; generated and reported when absent.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Search budget: BFS states, random placements or random draws.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// Position graph X (.bg)
    #[arg(long)]
    pub x: PathBuf,
    /// Token graph Y (.bg)
    #[arg(long)]
    pub y: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct CaseArgs {
    /// Case files (.gadget)
    pub files: Vec<PathBuf>,
    /// Use a built-in corpus; the only one is `builtin`.
    #[arg(long)]
    pub corpus: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count the components of FS(X, Y).
    Components {
        #[command(flatten)]
        pair: PairArgs,
        /// Largest 2r the dense counter accepts (at most 12).
        #[arg(long, default_value_t = fsgraph::fs::DEFAULT_DENSE_CAP)]
        cap: usize,
    },
    /// Decide whether tokens u and v can trade places from a placement.
    Exchange {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        /// Start placement as tokens listed by position, e.g. "1 0 2 3"; identity by default.
        #[arg(long)]
        state: Option<String>,
    },
    /// List cut edges and maximal bridges of a graph.
    Bridges {
        #[arg(long)]
        x: PathBuf,
    },
    /// Evaluate the two-component criterion for FS(X, K_{r,r}), r >= 5.
    Criterion {
        #[arg(long)]
        x: PathBuf,
    },
    /// Structure census of a graph.
    Census {
        #[arg(long)]
        x: PathBuf,
    },
    /// Replay certificate cases under every instantiation.
    Certify(CaseArgs),
    /// Compare listed sequences with shortest exchanges.
    Shortest {
        #[command(flatten)]
        cases: CaseArgs,
        /// Also report the optimum of each instantiation on its own.
        #[arg(long)]
        per_instantiation: bool,
    },
    /// Count components for pairs meeting a minimum-degree sum.
    Scan {
        #[arg(long)]
        r: usize,
        /// Degree-sum bound; defaults to floor(3r/2) + 1.
        #[arg(long)]
        bound: Option<usize>,
        /// Sample `--budget` pairs instead of enumerating.
        #[arg(long)]
        random: bool,
    },
    /// Look for pairs at a given degree sum with more than two components.
    Tightness {
        #[arg(long)]
        r: usize,
        /// Exact degree sum; defaults to floor(3r/2).
        #[arg(long)]
        degree_sum: Option<usize>,
        /// Sample `--budget` candidates instead of enumerating.
        #[arg(long)]
        random: bool,
    },
    /// Check the minimum-degree thresholds at r = 3, 4, 5.
    Corollary {
        #[arg(long)]
        r: usize,
    },
    /// Monte Carlo sweep of the criterion on G(K_{r,r}, p).
    Sweep {
        #[arg(long)]
        r: usize,
        /// Offsets c with p = (ln r + c) / r, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "p")]
        offsets: Vec<f64>,
        /// Explicit probabilities, comma separated.
        #[arg(long, value_delimiter = ',')]
        p: Vec<f64>,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        /// Write the result here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the criterion with direct counts at r = 5.
    Crossval {
        #[arg(long, value_delimiter = ',', default_values_t = [0.2, 0.35, 0.5])]
        p: Vec<f64>,
        #[arg(long, default_value_t = 50)]
        samples: u64,
    },
    /// Search for a placement admitting no friendly swap.
    Isolated {
        #[command(flatten)]
        pair: PairArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(CliError::EXIT)
        }
    }
}
