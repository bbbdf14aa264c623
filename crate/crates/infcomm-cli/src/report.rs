//! Serializable query reports.
//!
//! Field order is fixed by declaration order and member lists are sorted, so
//! equal inputs give byte-identical output. Wall-clock times are only
//! included on request.

use std::time::Duration;

use infcomm::{Communities, CommunityRef, IngestReport, SearchTrace, WeightedGraph};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Core,
    Noncontainment,
    Truss,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Query {
    pub gamma: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub variant: Variant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityRecord {
    pub rank: usize,
    pub influence: f64,
    pub keynode: String,
    pub size: usize,
    /// Sorted member labels; omitted in nested output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<String>>,
    /// Labels of the community's own group, in nested output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<String>>,
    /// Ranks of directly contained communities, in nested output.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub children: Option<Vec<usize>>,
}

impl CommunityRecord {
    pub fn new(graph: &WeightedGraph, c: CommunityRef<'_>, nested: bool) -> Self {
        let labels = |vs: &[usize]| {
            let mut out: Vec<String> = vs.iter().map(|&v| graph.label(v).to_string()).collect();
            out.sort_unstable_by(|a, b| infcomm::graph::label_order(a, b));
            out
        };
        let members = c.members();
        CommunityRecord {
            rank: c.rank(),
            influence: c.influence(),
            keynode: graph.label(c.keynode()).to_string(),
            size: members.len(),
            members: (!nested).then(|| labels(&members)),
            group: nested.then(|| labels(c.group())),
            children: nested.then(|| {
                let mut ranks: Vec<usize> = c.children().map(|ch| ch.rank()).collect();
                ranks.sort_unstable();
                ranks
            }),
        }
    }
}

pub fn records(graph: &WeightedGraph, cs: &Communities, nested: bool) -> Vec<CommunityRecord> {
    cs.iter().map(|c| CommunityRecord::new(graph, c, nested)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IngestRecord {
    pub vertices: usize,
    pub edges: usize,
    pub self_loops: usize,
    pub duplicate_edges: usize,
}

impl From<&IngestReport> for IngestRecord {
    fn from(r: &IngestReport) -> Self {
        IngestRecord { vertices: r.vertices, edges: r.edges, self_loops: r.self_loops, duplicate_edges: r.duplicate_edges }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub prefix_len: usize,
    pub tau: Option<f64>,
    pub size: usize,
    pub count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub accessed_size: usize,
    pub graph_size: usize,
    pub iterations: Vec<IterationRecord>,
}

pub fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

impl TraceRecord {
    pub fn new(graph: &WeightedGraph, trace: &SearchTrace, timings: bool) -> Self {
        TraceRecord {
            accessed_size: trace.accessed_size(),
            graph_size: graph.size(),
            iterations: trace
                .iterations
                .iter()
                .map(|it| IterationRecord {
                    prefix_len: it.prefix_len,
                    tau: it.tau.is_finite().then_some(it.tau),
                    size: it.size,
                    count: it.count,
                    elapsed_ms: timings.then(|| millis(it.elapsed)),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub build_ms: f64,
    pub count_ms: f64,
    pub enumerate_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub query: Query,
    pub ingest: IngestRecord,
    /// Fewer than `k` communities exist.
    pub fewer_than_k: bool,
    pub communities: Vec<CommunityRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

/// One line of progressive output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StreamLine {
    Community(CommunityRecord),
    Summary(Summary),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub query: Query,
    pub emitted: usize,
    /// The limit or an interrupt ended the run early.
    pub stopped: bool,
    pub trace: TraceRecord,
}
