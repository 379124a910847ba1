//! `hyperlocal` command-line driver.
//!
//! Records go to stdout as line-delimited JSON, one per run; the summary
//! table goes to stderr. Exit codes: 0 success, 1 input error, 2 internal
//! assertion failure.

mod commands;
mod output;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "hyperlocal", version, about = "Strongly-local hypergraph clustering")]
pub struct Cli {
    /// Suppress the summary table on stderr.
    #[arg(short, long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Hypergraph file: one edge per line, optional leading `w=<float>`.
    #[arg(long)]
    hypergraph: PathBuf,
    /// Splitting family: `aon:w`, `dlt:delta[:scale]` or `clique:w`.
    /// Defaults to the file header, then `aon:1`.
    #[arg(long, conflicts_with = "delta")]
    splitting: Option<String>,
    /// Shorthand for `--splitting dlt:<delta>`.
    #[arg(long)]
    delta: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct Protocol {
    /// Fraction of the target sampled as seeds.
    #[arg(long, default_value_t = 0.05)]
    seed_frac: f64,
    /// The reference set grows by `grow * |T|` BestNeighbors.
    #[arg(long, default_value_t = 2.0)]
    grow: f64,
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
    /// Runs per cluster; trial `i` uses rng seed `rng-seed + i`.
    #[arg(long, default_value_t = 1)]
    trials: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimize localized conductance around a reference set.
    Cluster(ClusterArgs),
    /// Rank neighbors of the seeds by shared edge count.
    Topn(RankArgs),
    /// Rank neighbors of the seeds by fraction of edges touching the seeds.
    Bestn(RankArgs),
    /// Write the clique expansion of a hypergraph.
    Expand(ExpandArgs),
    /// Exhaustive optimum on a small hypergraph (at most 20 nodes).
    Oracle(OracleArgs),
    /// Generate a planted-cluster hypergraph and its labels.
    Synth(SynthArgs),
    /// Rerun the seed-growing protocol for a list of delta values.
    Sweep(SweepArgs),
    /// Check the conductance and normalized cut guarantees against a target.
    CheckTheorems(CheckArgs),
}

#[derive(Args, Debug)]
pub struct ClusterArgs {
    #[command(flatten)]
    input: Input,
    /// Labels file, `name: id id id` per line.
    #[arg(long)]
    labels: Option<PathBuf>,
    /// Target cluster for the seed-growing protocol (repeatable). With
    /// `--labels` and no `--cluster`, every label is run.
    #[arg(long)]
    cluster: Vec<String>,
    /// Explicit reference set (comma or space separated ids) instead of
    /// the protocol.
    #[arg(long, conflicts_with_all = ["labels", "cluster"])]
    reference: Option<String>,
    /// Nodes of the reference set anchored to the source side.
    #[arg(long, requires = "reference")]
    seeds: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    eps: f64,
    #[command(flatten)]
    protocol: Protocol,
    /// Also score graph localized conductance on both clique expansions.
    #[arg(long)]
    clique_baselines: bool,
    /// Solve every cut on the whole hypergraph instead of growing locally.
    #[arg(long)]
    global: bool,
    /// Emit one record per local-growth round.
    #[arg(long)]
    trace: bool,
}

#[derive(Args, Debug)]
pub struct RankArgs {
    #[command(flatten)]
    input: Input,
    /// Seed nodes (comma or space separated ids).
    #[arg(long)]
    seeds: String,
    /// Number of ranked nodes to return.
    #[arg(short, long)]
    k: usize,
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    #[command(flatten)]
    input: Input,
    /// Clique edges weigh `1/|e|` instead of 1.
    #[arg(long)]
    weighted: bool,
    /// Hyperedges with this many nodes or more are discarded.
    #[arg(long, default_value_t = 50)]
    max_size: usize,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[command(flatten)]
    input: Input,
    /// Reference set; required unless `--conductance`.
    #[arg(long)]
    reference: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    eps: f64,
    /// Also minimize the s-t cut objective at this alpha.
    #[arg(long)]
    alpha: Option<f64>,
    /// Minimize plain conductance instead.
    #[arg(long)]
    conductance: bool,
    /// Compare against the flow-based solver; exit 2 on disagreement.
    #[arg(long)]
    verify: bool,
}

#[derive(Args, Debug)]
pub struct SynthArgs {
    #[arg(long)]
    nodes: usize,
    #[arg(long)]
    clusters: usize,
    #[arg(long)]
    cluster_size: usize,
    /// Inclusive edge size range, `lo-hi`.
    #[arg(long, default_value = "2-5")]
    edge_size: String,
    #[arg(long)]
    p_in: f64,
    #[arg(long)]
    p_cross: f64,
    /// Extra large edges per cluster.
    #[arg(long, default_value_t = 0)]
    large_edges: usize,
    #[arg(long, default_value = "20-40")]
    large_size: String,
    /// Fraction of each large edge drawn from its cluster.
    #[arg(long, default_value_t = 0.9)]
    large_purity: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Splitting written into the file header.
    #[arg(long, default_value = "aon:1")]
    splitting: String,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long)]
    labels_output: PathBuf,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    hypergraph: PathBuf,
    #[arg(long)]
    labels: PathBuf,
    /// Target clusters; all labels when omitted.
    #[arg(long)]
    cluster: Vec<String>,
    /// Comma separated delta values.
    #[arg(long, default_value = "1,2,5,10,100,1000,5000")]
    deltas: String,
    #[arg(long, default_value_t = 1.0)]
    eps: f64,
    #[command(flatten)]
    protocol: Protocol,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    labels: PathBuf,
    /// Target set T.
    #[arg(long)]
    cluster: String,
    /// Reference set; grown from the target by the seed protocol if absent.
    #[arg(long)]
    reference: Option<String>,
    /// Defaults to vol(R)/vol(V \ R).
    #[arg(long)]
    eps: Option<f64>,
    #[command(flatten)]
    protocol: Protocol,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage mistakes are input errors; help and version are not errors
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    std::panic::set_hook(Box::new(|info| {
        eprintln!("internal error: {info}");
    }));
    match std::panic::catch_unwind(|| commands::run(&cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
        Err(_) => ExitCode::from(2),
    }
}
