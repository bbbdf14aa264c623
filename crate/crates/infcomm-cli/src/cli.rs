//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::Algorithm;
use crate::generate::GraphSpec;
use crate::report::Variant;

#[derive(Debug, Parser)]
#[command(name = "infcomm", version, about = "Top-k influential community search on vertex-weighted graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report the k most influential γ-communities.
    Topk(TopkArgs),
    /// Stream communities in decreasing influence as they are found.
    Progressive(ProgressiveArgs),
    /// List every community with the brute-force oracle (small graphs only).
    Oracle(OracleArgs),
    /// Compute PageRank scores for use as vertex weights.
    Pagerank(PagerankArgs),
    /// Write a synthetic graph and its PageRank weights.
    Generate(GenerateArgs),
    /// Time algorithms on a synthetic graph and print CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Ndjson,
    Csv,
}

#[derive(Debug, Args)]
pub struct GraphFiles {
    /// Edge list: one `u v` pair per line, `#` comments allowed.
    #[arg(long)]
    pub edges: PathBuf,
    /// Weight file: one `v w` pair per line.
    #[arg(long)]
    pub weights: PathBuf,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn growth_ratio(s: &str) -> Result<f64, String> {
    let d: f64 = s.parse().map_err(|e: std::num::ParseFloatError| e.to_string())?;
    if d.is_finite() && d > 1.0 {
        Ok(d)
    } else {
        Err("must be a finite value greater than 1".into())
    }
}

fn graph_spec(s: &str) -> Result<GraphSpec, String> {
    s.parse().map_err(|e: crate::generate::SpecError| e.to_string())
}

#[derive(Debug, Args)]
pub struct TopkArgs {
    #[command(flatten)]
    pub graph: GraphFiles,
    /// Minimum degree inside a community (truss: triangle parameter).
    #[arg(long, value_parser = positive)]
    pub gamma: usize,
    #[arg(long, value_parser = positive)]
    pub k: usize,
    /// Growth ratio between successive prefixes.
    #[arg(long, default_value_t = infcomm::search::DEFAULT_DELTA, value_parser = growth_ratio)]
    pub delta: f64,
    #[arg(long, value_enum, default_value_t = Variant::Core)]
    pub variant: Variant,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Emit each community's own group and child ranks instead of members.
    #[arg(long)]
    pub nested: bool,
    /// Include wall-clock times, which makes output nondeterministic.
    #[arg(long)]
    pub timings: bool,
    /// Write here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProgressiveArgs {
    #[command(flatten)]
    pub graph: GraphFiles,
    #[arg(long, value_parser = positive)]
    pub gamma: usize,
    /// Stop after this many communities.
    #[arg(long, value_parser = positive)]
    pub limit: Option<usize>,
    #[arg(long, default_value_t = infcomm::search::DEFAULT_DELTA, value_parser = growth_ratio)]
    pub delta: f64,
    #[arg(long, value_enum, default_value_t = Format::Ndjson)]
    pub format: Format,
    #[arg(long)]
    pub nested: bool,
    #[arg(long)]
    pub timings: bool,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub graph: GraphFiles,
    #[arg(long, value_parser = positive)]
    pub gamma: usize,
    #[arg(long, value_enum, default_value_t = Variant::Core)]
    pub variant: Variant,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PagerankArgs {
    #[arg(long)]
    pub edges: PathBuf,
    #[arg(long, default_value_t = 0.85)]
    pub damping: f64,
    /// Iteration cap.
    #[arg(long, default_value_t = 100)]
    pub iterations: usize,
    /// Stop once the L1 change between rounds is below this.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// `erdos(n,p,seed)` or `powerlaw(n,m_per_vertex,seed)`.
    #[arg(value_parser = graph_spec)]
    pub spec: GraphSpec,
    /// Replaces the seed given in the spec.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub edges_out: PathBuf,
    /// PageRank weights of the generated graph.
    #[arg(long)]
    pub weights_out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// `erdos(n,p,seed)` or `powerlaw(n,m_per_vertex,seed)`; weights are PageRank scores.
    #[arg(long, value_parser = graph_spec)]
    pub graph: GraphSpec,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_delimiter = ',', value_parser = positive, required = true)]
    pub gamma: Vec<usize>,
    #[arg(long, value_delimiter = ',', value_parser = positive, required = true)]
    pub k: Vec<usize>,
    #[arg(long, value_delimiter = ',', value_parser = growth_ratio, default_value = "2")]
    pub delta: Vec<f64>,
    #[arg(long, value_delimiter = ',', value_enum, default_value = "local,online_all")]
    pub algorithms: Vec<Algorithm>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}
