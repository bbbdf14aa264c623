//! Benchmark cells: one algorithm on one generated graph and parameter set.

use std::fmt::Write as _;
use std::ops::ControlFlow;
use std::sync::atomic::AtomicBool;
use std::time::{Duration, Instant};

use infcomm::baselines::{forward, online_all};
use infcomm::search::{local_search_progressive, ProgressiveOptions};
use infcomm::{local_search, Communities, CommunityRef, QueryParams, WeightedGraph};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Algorithm {
    Local,
    Progressive,
    OnlineAll,
    Forward,
}

impl Algorithm {
    /// Whether the growth ratio affects the run.
    pub fn uses_delta(self) -> bool {
        matches!(self, Algorithm::Local | Algorithm::Progressive)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub elapsed: Duration,
    pub accessed_size: usize,
    pub iterations: usize,
    pub communities: usize,
    pub hash: String,
}

/// Digest of the flattened result: influence, keynode label and sorted
/// member labels of each community in rank order.
pub fn result_hash(graph: &WeightedGraph, communities: impl IntoIterator<Item = (f64, Vec<usize>, usize)>) -> String {
    let mut h = Sha256::new();
    for (influence, members, key) in communities {
        h.update(influence.to_bits().to_le_bytes());
        h.update(graph.label(key).as_bytes());
        h.update([0]);
        let mut labels: Vec<&str> = members.iter().map(|&v| graph.label(v)).collect();
        labels.sort_unstable_by(|a, b| infcomm::graph::label_order(a, b));
        for l in labels {
            h.update(l.as_bytes());
            h.update(b" ");
        }
        h.update(b"\n");
    }
    h.finalize()[..8].iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

pub fn communities_hash(graph: &WeightedGraph, cs: &Communities) -> String {
    result_hash(graph, cs.iter().map(|c| (c.influence(), c.members(), c.keynode())))
}

pub fn run_cell(graph: &WeightedGraph, gamma: usize, k: usize, delta: f64, algorithm: Algorithm) -> Result<Cell> {
    let started = Instant::now();
    let (communities, accessed_size, iterations) = match algorithm {
        Algorithm::Local => {
            let r = local_search(graph, QueryParams::new(gamma, k).with_delta(delta))?;
            (r.communities, r.trace.accessed_size(), r.trace.rounds())
        }
        Algorithm::Progressive => {
            QueryParams::new(gamma, k).validate()?;
            let mut seen = 0;
            let mut sink = |_: CommunityRef<'_>| {
                seen += 1;
                if seen >= k {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            };
            let options = ProgressiveOptions { delta, record_fragments: false };
            let r = local_search_progressive(graph, gamma, options, &mut sink, &AtomicBool::new(false))?;
            (r.communities, r.trace.accessed_size(), r.trace.rounds())
        }
        Algorithm::OnlineAll => (online_all(graph, gamma, k)?.communities, graph.size(), 1),
        Algorithm::Forward => (forward(graph, gamma, k)?.communities, graph.size(), 1),
    };
    let elapsed = started.elapsed();
    Ok(Cell {
        elapsed,
        accessed_size,
        iterations,
        communities: communities.len(),
        hash: communities_hash(graph, &communities),
    })
}

/// One CSV row of `infcomm bench`.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub graph: String,
    pub vertices: usize,
    pub edges: usize,
    pub gamma: usize,
    pub k: usize,
    /// Empty for algorithms that ignore the growth ratio.
    pub delta: Option<f64>,
    pub algorithm: Algorithm,
    pub seconds: f64,
    pub accessed_size: usize,
    pub iterations: usize,
    pub communities: usize,
    pub result_hash: String,
}
