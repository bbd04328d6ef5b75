//! Command-line front end: construct codes from JSON configs, reproduce the
//! built-in tables, search defining sets, and evaluate the counting bound.
//!
//! Exit codes: 0 success (including reproductions that surface
//! discrepancies — those live in the report), 1 validation or I/O problems,
//! 2 failed mathematical preconditions (e.g. a defining set that is not
//! self-orthogonal).

use clap::{Parser, Subcommand, ValueEnum};
use jaffine::error::Error;
use jaffine_cli::cache::Cache;
use jaffine_cli::config::{ConstructionConfig, SearchParams};
use jaffine_cli::report::Report;
use jaffine_cli::runner::{run_construct, run_reproduce, Globals};
use jaffine_cli::search::run_search;
use serde_json::json;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "jaffine",
    version,
    about = "Construct and check self-orthogonal evaluation codes and the stabilizer codes they induce"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Worker threads for the distance engines.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Disable the distance-result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Directory for cached distance results.
    #[arg(long, global = true, value_name = "DIR", default_value = ".jaffine-cache")]
    cache_dir: PathBuf,
    /// Seed for randomized phases of the distance engines.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the codes described by a JSON construction config.
    Construct {
        /// Path to the construction config.
        config: PathBuf,
    },
    /// Re-run a built-in table and compare against its claimed rows.
    Reproduce {
        /// Table id (1-16).
        #[arg(long)]
        table: u32,
        /// 1-based row numbers to reproduce (default: all).
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<usize>>,
        /// Nominal per-construction distance budget in seconds.
        #[arg(long, value_name = "SECONDS")]
        budget: Option<f64>,
    },
    /// Enumerate orbit-closed defining sets over a grid and report the
    /// (dimension, distance) frontier.
    Search {
        /// Path to the search parameters (grid and subfield choice).
        params: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Euclid)]
        mode: Mode,
        /// Nominal budget in seconds; sets how many candidates are tried.
        #[arg(long, value_name = "SECONDS", default_value_t = 60.0)]
        budget: f64,
    },
    /// Evaluate the stabilizer counting bound for claimed parameters.
    GvCheck { n: u64, k: u64, d: u64, q: u64 },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Euclidean duality on the subfield-subcode.
    Euclid,
    /// Hermitian duality on the subfield-subcode.
    Herm,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(&cli));
}

fn run(cli: &Cli) -> i32 {
    let report = match execute(cli) {
        Ok(r) => r,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            return code;
        }
    };
    let text = report.to_pretty();
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 1;
            }
        }
        None => println!("{text}"),
    }
    0
}

fn lib_err(e: Error) -> (i32, String) {
    let code = match e {
        Error::Precondition(_) => 2,
        Error::Validation(_) => 1,
    };
    (code, e.to_string())
}

fn read_input(path: &PathBuf) -> Result<String, (i32, String)> {
    std::fs::read_to_string(path).map_err(|e| (1, format!("cannot read {}: {e}", path.display())))
}

fn execute(cli: &Cli) -> Result<Report, (i32, String)> {
    let cache = if cli.no_cache {
        None
    } else {
        Some(
            Cache::open(&cli.cache_dir)
                .map_err(|e| (1, format!("cannot open cache {}: {e}", cli.cache_dir.display())))?,
        )
    };
    let g = Globals { seed: cli.seed, threads: cli.threads.max(1), cache };

    match &cli.cmd {
        Cmd::Construct { config } => {
            let cfg = ConstructionConfig::from_json(&read_input(config)?).map_err(lib_err)?;
            run_construct(&cfg, &g).map_err(lib_err)
        }
        Cmd::Reproduce { table, rows, budget } => {
            run_reproduce(*table, rows.as_deref(), *budget, &g).map_err(lib_err)
        }
        Cmd::Search { params, mode, budget } => {
            let p = SearchParams::from_json(&read_input(params)?).map_err(lib_err)?;
            run_search(&p, *mode == Mode::Herm, *budget, &g).map_err(lib_err)
        }
        Cmd::GvCheck { n, k, d, q } => {
            let r = jaffine::stabilizer::gv_check(*n, *k, *d, *q).map_err(lib_err)?;
            let mut rep = Report::new("gv-check", json!({"n": n, "k": k, "d": d, "q": q}));
            rep.set_check("parity_ok", json!(r.parity_ok));
            rep.set_check("exists_by_gv", json!(r.exists_by_gv));
            rep.set_check("exceeds_gv", json!(r.exceeds_gv));
            Ok(rep)
        }
    }
}
