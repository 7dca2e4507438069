//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permcount::{Config, Guards, Route};

#[derive(Parser, Debug)]
#[command(
    name = "permcount",
    version,
    about = "Exact counts of permutation polynomials over finite fields by degree"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count permutation polynomials of degree q-2 (or of degree --d).
    Count(RunArgs),
    /// Emit N_q(d) for every degree 1..=q-2.
    Table(RunArgs),
    /// Cross-check every route against the brute-force oracle.
    Verify(RunArgs),
    /// Time each route over one or more fields.
    Bench(RunArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Count(_) => "count",
            Command::Table(_) => "table",
            Command::Verify(_) => "verify",
            Command::Bench(_) => "bench",
        }
    }

    pub fn args(&self) -> &RunArgs {
        match self {
            Command::Count(a) | Command::Table(a) | Command::Verify(a) | Command::Bench(a) => a,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteSel {
    Groupring,
    Cyclotomic,
    Partition,
    All,
}

impl RouteSel {
    pub fn routes(self) -> Vec<Route> {
        match self {
            RouteSel::Groupring => vec![Route::GroupRing],
            RouteSel::Cyclotomic => vec![Route::Cyclotomic],
            RouteSel::Partition => vec![Route::Partition],
            RouteSel::All => Route::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Field as `p`, `p^r` or `p^r:c_r,...,c_0`; repeatable for bench.
    #[arg(long, required = true)]
    pub field: Vec<String>,

    /// Defining polynomial, coefficients high-to-low (e.g. `1,0,1,1`).
    #[arg(long)]
    pub modulus: Option<String>,

    /// Degree to report (count only; default q-2).
    #[arg(long)]
    pub d: Option<u32>,

    /// Counting route(s); bench treats `groupring` as both naive and Ryser.
    #[arg(long, value_enum)]
    pub route: Option<RouteSel>,

    /// Worker threads for Ryser and the oracle.
    #[arg(long, env = "PERMCOUNT_THREADS", default_value_t = 1)]
    pub threads: usize,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, default_value_t = permcount::guards::DEFAULT_MAX_NAIVE)]
    pub max_naive: usize,

    #[arg(long, default_value_t = permcount::guards::DEFAULT_MAX_RYSER)]
    pub max_ryser: usize,

    #[arg(long, default_value_t = permcount::guards::DEFAULT_MAX_BELL)]
    pub max_bell: usize,

    #[arg(long, default_value_t = permcount::guards::DEFAULT_MAX_ORACLE)]
    pub max_oracle: u64,
}

impl RunArgs {
    pub fn config(&self) -> Config {
        Config {
            guards: Guards {
                max_naive: self.max_naive,
                max_ryser: self.max_ryser,
                max_bell: self.max_bell,
                max_oracle: self.max_oracle,
                ..Guards::default()
            },
            threads: self.threads,
        }
    }
}
