//! Subcommand implementations, separated from argument parsing and process
//! exit so they can be driven from tests.

use std::collections::HashMap;
use std::io::{ErrorKind, Write};
use std::ops::ControlFlow;
use std::path::Path;
use std::sync::atomic::AtomicBool;
use std::time::{Duration, Instant};

use infcomm::baselines::{oracle_enumerate, DEFAULT_ORACLE_MAX};
use infcomm::extensions::{filter_noncontainment, local_search_noncontainment, local_search_truss, truss_oracle};
use infcomm::search::{local_search_progressive, ProgressiveOptions};
use infcomm::{local_search, CommunityRef, QueryParams};
use serde::Serialize;

use crate::bench::{run_cell, Algorithm, Row};
use crate::cli::{BenchArgs, Command, Format, GenerateArgs, OracleArgs, PagerankArgs, ProgressiveArgs, TopkArgs};
use crate::error::{CliError, Result};
use crate::generate::weighted_graph;
use crate::io::{load_graph, output, read_edges, write_edges, write_weights};
use crate::pagerank::{pagerank, PagerankOptions};
use crate::report::{
    millis, records, IngestRecord, Query, RunReport, StreamLine, Summary, Timings, TraceRecord, Variant,
};

/// Environment variable overriding the oracle's vertex bound.
pub const ORACLE_MAX_ENV: &str = "INFCOMM_ORACLE_MAX";

/// Set by the interrupt handler; progressive runs finish the current
/// emission and stop.
pub static INTERRUPTED: AtomicBool = AtomicBool::new(false);

pub fn run(command: &Command) -> Result<()> {
    match command {
        Command::Topk(args) => {
            let report = topk(args)?;
            write_report(&report, args.format, args.output.as_deref())
        }
        Command::Progressive(args) => {
            if args.format != Format::Ndjson {
                return Err(CliError::Usage("progressive output is always ndjson".into()));
            }
            let mut out = output(args.output.as_deref())?;
            progressive(args, &mut out, &INTERRUPTED).map(drop)
        }
        Command::Oracle(args) => {
            let report = oracle(args)?;
            write_report(&report, args.format, args.output.as_deref())
        }
        Command::Pagerank(args) => pagerank_weights(args),
        Command::Generate(args) => generate(args),
        Command::Bench(args) => {
            let mut out = output(args.output.as_deref())?;
            bench(args, &mut out)
        }
    }
}

fn stdout_error(path: Option<&Path>, e: std::io::Error) -> CliError {
    CliError::io(path.unwrap_or(Path::new("<stdout>")), e)
}

fn write_json_line(out: &mut dyn Write, value: &impl Serialize) -> std::io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")
}

pub fn write_report(report: &RunReport, format: Format, path: Option<&Path>) -> Result<()> {
    let mut out = output(path)?;
    let written = match format {
        Format::Json => serde_json::to_writer_pretty(&mut out, report)
            .map_err(std::io::Error::from)
            .and_then(|_| out.write_all(b"\n")),
        Format::Ndjson => report
            .communities
            .iter()
            .try_for_each(|c| write_json_line(&mut out, &StreamLine::Community(c.clone()))),
        Format::Csv => return Err(CliError::Usage("csv output is only available for bench".into())),
    };
    written.and_then(|_| out.flush()).map_err(|e| stdout_error(path, e))
}

pub fn topk(args: &TopkArgs) -> Result<RunReport> {
    let started = Instant::now();
    let (graph, ingest) = load_graph(&args.graph.edges, &args.graph.weights)?;
    let build = started.elapsed();
    let params = QueryParams::new(args.gamma, args.k).with_delta(args.delta);
    let result = match args.variant {
        Variant::Core => local_search(&graph, params)?,
        Variant::Noncontainment => local_search_noncontainment(&graph, params)?,
        Variant::Truss => local_search_truss(&graph, params)?,
    };
    let count: Duration = result.trace.iterations.iter().map(|it| it.elapsed).sum();
    Ok(RunReport {
        query: Query { gamma: args.gamma, k: Some(args.k), delta: Some(args.delta), variant: args.variant },
        ingest: IngestRecord::from(&ingest),
        fewer_than_k: result.fewer_than_k,
        communities: records(&graph, &result.communities, args.nested),
        trace: Some(TraceRecord::new(&graph, &result.trace, args.timings)),
        timings: args.timings.then(|| Timings {
            build_ms: millis(build),
            count_ms: millis(count),
            enumerate_ms: millis(result.trace.enumerate_elapsed),
        }),
    })
}

/// Streams one NDJSON line per community, then a summary line. A closed
/// output pipe ends the run like a limit does.
pub fn progressive(args: &ProgressiveArgs, out: &mut dyn Write, stop: &AtomicBool) -> Result<Summary> {
    let (graph, _) = load_graph(&args.graph.edges, &args.graph.weights)?;
    let mut emitted = 0;
    let mut failure = None;
    let mut sink = |c: CommunityRef<'_>| {
        let line = StreamLine::Community(crate::report::CommunityRecord::new(&graph, c, args.nested));
        if let Err(e) = write_json_line(out, &line).and_then(|_| out.flush()) {
            failure = Some(e);
            return ControlFlow::Break(());
        }
        emitted += 1;
        if args.limit.is_some_and(|limit| emitted >= limit) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    };
    let options = ProgressiveOptions { delta: args.delta, record_fragments: false };
    let outcome = local_search_progressive(&graph, args.gamma, options, &mut sink, stop)?;
    match failure {
        Some(e) if e.kind() == ErrorKind::BrokenPipe => {}
        Some(e) => return Err(stdout_error(args.output.as_deref(), e)),
        None => {}
    }
    let summary = Summary {
        query: Query { gamma: args.gamma, k: args.limit, delta: Some(args.delta), variant: Variant::Core },
        emitted,
        stopped: outcome.stopped,
        trace: TraceRecord::new(&graph, &outcome.trace, args.timings),
    };
    let line = StreamLine::Summary(summary.clone());
    match write_json_line(out, &line).and_then(|_| out.flush()) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(stdout_error(args.output.as_deref(), e)),
        _ => Ok(summary),
    }
}

pub fn oracle_bound() -> Result<usize> {
    match std::env::var(ORACLE_MAX_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{ORACLE_MAX_ENV} must be a vertex count, got `{v}`"))),
        Err(_) => Ok(DEFAULT_ORACLE_MAX),
    }
}

pub fn oracle(args: &OracleArgs) -> Result<RunReport> {
    let max = oracle_bound()?;
    let (graph, ingest) = load_graph(&args.graph.edges, &args.graph.weights)?;
    let communities = match args.variant {
        Variant::Core => oracle_enumerate(&graph, args.gamma, max)?,
        Variant::Noncontainment => filter_noncontainment(&graph, &oracle_enumerate(&graph, args.gamma, max)?),
        Variant::Truss => truss_oracle(&graph, args.gamma, max)?,
    };
    Ok(RunReport {
        query: Query { gamma: args.gamma, k: None, delta: None, variant: args.variant },
        ingest: IngestRecord::from(&ingest),
        fewer_than_k: false,
        communities: records(&graph, &communities, false),
        trace: None,
        timings: None,
    })
}

fn intern<'a>(index: &mut HashMap<&'a str, usize>, labels: &mut Vec<&'a str>, label: &'a str) -> usize {
    *index.entry(label).or_insert_with(|| {
        labels.push(label);
        labels.len() - 1
    })
}

pub fn pagerank_weights(args: &PagerankArgs) -> Result<()> {
    if !(0.0..1.0).contains(&args.damping) {
        return Err(CliError::Usage("damping must lie in [0, 1)".into()));
    }
    let edges = read_edges(&args.edges)?;
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<&str> = Vec::new();
    let pairs: Vec<(usize, usize)> = edges
        .iter()
        .map(|(u, v)| (intern(&mut index, &mut labels, u), intern(&mut index, &mut labels, v)))
        .collect();
    let options = PagerankOptions { damping: args.damping, max_iterations: args.iterations, tolerance: args.tolerance };
    let scores = pagerank(labels.len(), &pairs, options).scores;
    let path = args.output.as_deref();
    write_weights(output(path)?, labels.iter().copied().zip(scores)).map_err(|e| stdout_error(path, e))
}

pub fn generate(args: &GenerateArgs) -> Result<()> {
    let spec = args.seed.map_or(args.spec, |s| args.spec.with_seed(s));
    let graph = weighted_graph(&spec);
    let edge_file = std::fs::File::create(&args.edges_out).map_err(|e| CliError::io(&args.edges_out, e))?;
    let pairs = (0..graph.edge_count()).map(|e| {
        let (a, b) = graph.edge(e);
        (graph.label(a), graph.label(b))
    });
    write_edges(edge_file, pairs).map_err(|e| CliError::io(&args.edges_out, e))?;
    let weight_file = std::fs::File::create(&args.weights_out).map_err(|e| CliError::io(&args.weights_out, e))?;
    let rows = graph.order().map(|v| (graph.label(v), graph.weight(v)));
    write_weights(weight_file, rows).map_err(|e| CliError::io(&args.weights_out, e))
}

pub fn bench(args: &BenchArgs, out: &mut dyn Write) -> Result<()> {
    if args.format != Format::Csv {
        return Err(CliError::Usage("bench output is always csv".into()));
    }
    let spec = args.seed.map_or(args.graph, |s| args.graph.with_seed(s));
    let graph = weighted_graph(&spec);
    let mut csv = csv::Writer::from_writer(out);
    let io_error = |e: csv::Error| stdout_error(args.output.as_deref(), e.into());
    for &gamma in &args.gamma {
        for &k in &args.k {
            let mut push = |algorithm: Algorithm, delta: Option<f64>| -> Result<()> {
                let cell = run_cell(&graph, gamma, k, delta.unwrap_or(2.0), algorithm)?;
                let row = Row {
                    graph: spec.to_string(),
                    vertices: graph.vertex_count(),
                    edges: graph.edge_count(),
                    gamma,
                    k,
                    delta,
                    algorithm,
                    seconds: cell.elapsed.as_secs_f64(),
                    accessed_size: cell.accessed_size,
                    iterations: cell.iterations,
                    communities: cell.communities,
                    result_hash: cell.hash,
                };
                csv.serialize(row).map_err(io_error)
            };
            for &algorithm in &args.algorithms {
                if algorithm.uses_delta() {
                    for &delta in &args.delta {
                        push(algorithm, Some(delta))?;
                    }
                } else {
                    push(algorithm, None)?;
                }
            }
        }
    }
    csv.flush().map_err(|e| stdout_error(args.output.as_deref(), e))
}
