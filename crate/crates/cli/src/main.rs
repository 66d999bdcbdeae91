//! `wshift`: generate, ingest, cluster, evaluate, and benchmark histogram
//! clustering from the command line.
//!
//! Exit codes: 0 success, 1 engine failure, 2 malformed input data,
//! 3 invalid configuration, 4 missing required parameter, 5 I/O failure.
//! Every failure also prints a one-line JSON report to stderr.

mod bench_config;
mod commands;
mod error;
mod io;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "wshift",
    version,
    about = "Histogram clustering by transport-median mode seeking"
)]
struct Cli {
    /// Cap the worker threads for per-seed engine runs (parallel builds only).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the synthetic two-class histogram dataset.
    Generate(GenerateArgs),
    /// Turn a directory of time-series files into a histogram CSV.
    Ingest(IngestArgs),
    /// Cluster a histogram CSV.
    Cluster(ClusterArgs),
    /// Score predicted labels against true labels.
    Eval(EvalArgs),
    /// Run the full benchmark sweep and write a report.
    Bench(BenchArgs),
}

#[derive(Args)]
pub struct GenerateArgs {
    /// Histograms per class.
    #[arg(long, default_value_t = 50)]
    pub per_class: usize,
    /// Samples drawn per histogram.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Bins per histogram.
    #[arg(long, default_value_t = 100)]
    pub bins: usize,
    /// Standard deviation of every mixture component.
    #[arg(long, default_value_t = 0.02)]
    pub sigma: f64,
    /// Generator seed; identical seeds give bitwise-identical files.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory for histograms.csv, labels.csv, manifest.json.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct IngestArgs {
    /// Directory of series files: plain text, one real per line.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Bins per histogram.
    #[arg(long, default_value_t = 100)]
    pub bins: usize,
    /// Lower edge of the binning range.
    #[arg(long, default_value_t = 0.0)]
    pub lo: f64,
    /// Upper edge of the binning range.
    #[arg(long, default_value_t = 1.0)]
    pub hi: f64,
    /// Output directory for histograms.csv, manifest.json.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    /// Transport-median mode seeking on histograms.
    Wms,
    /// L1 median shift on raw row vectors.
    MedianShift,
    /// Classical mean shift (squared Euclidean) on raw row vectors.
    MeanShift,
    /// Lloyd k-means under the transport distance.
    Kmws,
    /// Density-based clustering under the transport distance.
    DbscanWs,
}

#[derive(Args)]
pub struct ClusterArgs {
    /// Algorithm to run.
    #[arg(long)]
    pub algo: AlgoArg,
    /// Input histogram CSV.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Output directory for labels.csv, modes.csv, manifest.json.
    #[arg(long)]
    pub out: PathBuf,
    /// Bandwidth (shift family). Bin widths for wms; squared-Euclidean
    /// units for mean-shift.
    #[arg(long)]
    pub h: Option<f64>,
    /// Cluster count (kmws).
    #[arg(long)]
    pub k: Option<usize>,
    /// Neighborhood radius (dbscan-ws), inclusive.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Core-point neighbor floor, self included (dbscan-ws).
    #[arg(long)]
    pub min_pts: Option<usize>,
    /// Mode-merge radius; defaults to h/2.
    #[arg(long)]
    pub merge_radius: Option<f64>,
    /// Iteration cap per run.
    #[arg(long, default_value_t = 1000)]
    pub max_iter: usize,
    /// Initialization seed (kmws).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args)]
pub struct EvalArgs {
    /// Predicted labels CSV.
    #[arg(long)]
    pub pred: PathBuf,
    /// True labels CSV.
    #[arg(long)]
    pub truth: PathBuf,
    /// Optional JSON summary path ({ari, n, clusters_pred, clusters_true}).
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args)]
pub struct BenchArgs {
    /// Bench config file (key = value format); defaults run the full
    /// documented sweep.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory for report.csv, manifest.json.
    #[arg(long)]
    pub out: PathBuf,
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: Option<usize>) {
    if let Some(n) = threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("warning: could not configure the thread pool: {e}");
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(threads: Option<usize>) {
    if threads.is_some() {
        eprintln!("warning: built without the parallel feature; --threads has no effect");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads(cli.threads);
    let result = match &cli.command {
        Command::Generate(args) => commands::run_generate(args),
        Command::Ingest(args) => commands::run_ingest(args),
        Command::Cluster(args) => commands::run_cluster(args),
        Command::Eval(args) => commands::run_eval(args),
        Command::Bench(args) => commands::run_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
