//! `normlab` command-line driver.

mod cache;
mod cmd;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::cache::{Cache, RunManifest};
use crate::output::{render, Format};

#[derive(Parser, Debug)]
#[command(name = "normlab", version, about = "Norm forms, prime splitting and density experiments")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for randomized factoring.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for scans.
    #[arg(long, global = true, env = "NORMLAB_THREADS", default_value_t = 1)]
    pub threads: usize,
    /// Machine-readable JSON output (default).
    #[arg(long, global = true, conflicts_with = "tsv")]
    pub json: bool,
    /// Aligned tab-separated output.
    #[arg(long, global = true)]
    pub tsv: bool,
    /// JSONL file memoizing results.
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,
    /// Print the run manifest to stderr.
    #[arg(long, global = true)]
    pub manifest: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Norm form in degrevlex order, or its value at a point.
    Form {
        spec: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        eval: Option<Vec<i64>>,
    },
    /// Field invariants and validation warnings.
    Check { spec: String },
    /// Splitting type of one prime or of every prime in a range.
    Split {
        spec: String,
        p: Option<u64>,
        #[arg(long, requires = "to")]
        from: Option<u64>,
        #[arg(long)]
        to: Option<u64>,
    },
    /// Low, high or exceptional.
    Classify {
        spec: String,
        p: Option<u64>,
        #[arg(long, requires = "to")]
        from: Option<u64>,
        #[arg(long)]
        to: Option<u64>,
    },
    /// Empirical density of represented primes, or integers with --integers.
    Density {
        spec: String,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        integers: bool,
    },
    /// Observed Frobenius cycle types against theory.
    Chebotarev {
        spec: String,
        #[arg(long)]
        bound: u64,
    },
    /// Sieve bound prod (p^2 - p + 1)/p^2.
    Bound {
        #[arg(long, value_delimiter = ',', conflicts_with = "high")]
        primes: Option<Vec<u64>>,
        /// Use the first --count high primes of this spec.
        #[arg(long, requires = "count")]
        high: Option<String>,
        #[arg(long)]
        count: Option<usize>,
        /// Also measure the sieved set within [1, N].
        #[arg(long, value_name = "N")]
        check: Option<u64>,
    },
    /// Partial sums of 1/p over high primes.
    Diverge {
        spec: String,
        #[arg(long, value_delimiter = ',', required_unless_present = "bound")]
        checkpoints: Option<Vec<u64>>,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Least arithmetic progression of values.
    Ap {
        spec: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        bound: u64,
        /// Restrict to prime values.
        #[arg(long)]
        primes: bool,
    },
    /// Membership of n in the value set.
    Represent {
        spec: String,
        n: u64,
        #[arg(long)]
        prime: bool,
        /// Stream every n (every prime with --prime) up to this bound.
        #[arg(long)]
        to: Option<u64>,
    },
    /// Narrow class group of a fundamental discriminant.
    Classgroup {
        #[arg(allow_hyphen_values = true)]
        d: i64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("normlab: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), cmd::CliError> {
    let g = cli.global;
    let format = if g.tsv { Format::Tsv } else { Format::Json };
    let start = Instant::now();
    let key = cmd::key(&cli.command)?;
    let mut cache = match &g.cache {
        Some(path) => Some(Cache::open(path).map_err(cmd::CliError::io)?),
        None => None,
    };
    let hit = cache.as_ref().and_then(|c| c.lookup(&key, g.seed));
    let (result, cached) = match hit {
        Some(r) => (r, true),
        None => (cmd::execute(&cli.command, &g)?, false),
    };
    let manifest = RunManifest::new(&key, g.seed, g.threads, start.elapsed(), &result);
    if let (Some(c), false) = (cache.as_mut(), cached) {
        c.append(&manifest, &result).map_err(cmd::CliError::io)?;
    }
    if g.manifest {
        eprintln!("{}", serde_json::to_string(&manifest).expect("manifest serializes"));
    }
    print!("{}", render(&result, format));
    Ok(())
}
