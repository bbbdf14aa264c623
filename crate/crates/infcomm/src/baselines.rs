//! Global search baselines and brute-force ground truth.
//!
//! [`online_all`] and [`forward`] process the entire graph and serve as the
//! benchmark opponents of local search. [`oracle_enumerate`] and
//! [`exhaustive_enumerate`] follow the community definition directly and
//! share no code with the peeling machinery, so they can check it.

use std::collections::VecDeque;

use crate::community::Communities;
use crate::error::{Error, Result};
use crate::graph::{PrefixSubgraph, VertexId, WeightedGraph};
use crate::peel;

/// Default vertex bound for [`oracle_enumerate`].
pub const DEFAULT_ORACLE_MAX: usize = 12;

/// Hard vertex bound for [`exhaustive_enumerate`].
pub const EXHAUSTIVE_MAX: usize = 16;

/// Output of a global search.
#[derive(Debug, Clone)]
pub struct GlobalResult {
    /// Top-k communities, flat, by decreasing influence.
    pub communities: Communities,
    /// Number of influential γ-communities in the whole graph.
    pub total: usize,
}

/// Breadth-first search over live vertices. Visit stamps and liveness share
/// one table: removed vertices carry a stamp no epoch reaches.
struct ComponentScanner {
    stamp: Vec<u32>,
    epoch: u32,
    queue: Vec<VertexId>,
}

const DEAD: u32 = u32::MAX;

impl ComponentScanner {
    fn new(sub: &PrefixSubgraph<'_>) -> Self {
        let stamp = (0..sub.len()).map(|v| if sub.is_live(v) { 0 } else { DEAD }).collect();
        ComponentScanner { stamp, epoch: 0, queue: Vec::new() }
    }

    fn kill(&mut self, v: VertexId) {
        self.stamp[v] = DEAD;
    }

    /// Component of `start` among the live vertices of the whole graph. The
    /// search stops once it has reached all `live` vertices, since nothing is
    /// left to find.
    fn component(&mut self, graph: &WeightedGraph, start: VertexId, live: usize) -> Vec<VertexId> {
        self.epoch += 1;
        let epoch = self.epoch;
        self.queue.clear();
        self.queue.push(start);
        self.stamp[start] = epoch;
        let mut head = 0;
        'search: while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for &w in graph.higher(v).iter().chain(graph.lower(v)) {
                if self.stamp[w] < epoch {
                    self.stamp[w] = epoch;
                    self.queue.push(w);
                    if self.queue.len() == live {
                        break 'search;
                    }
                }
            }
        }
        self.queue.clone()
    }
}

/// Communities as `(keynode, members)`, lightest first.
type Snapshots = VecDeque<(VertexId, Vec<VertexId>)>;

/// Runs the OnlineAll loop over the whole graph, snapshotting a community
/// only when `keep(iteration)` holds. Returns the snapshots (increasing
/// influence) and the number of iterations.
fn global_loop(
    graph: &WeightedGraph,
    gamma: usize,
    mut keep: impl FnMut(usize) -> bool,
    limit: usize,
) -> Result<(Snapshots, usize)> {
    let mut sub = PrefixSubgraph::full(graph);
    peel::gamma_core(&mut sub, gamma, None)?;
    let mut scanner = ComponentScanner::new(&sub);
    let mut live = sub.live_vertices().count();
    let mut kept = VecDeque::new();
    let mut removed = Vec::new();
    let mut iterations = 0;
    let mut next = graph.vertex_count();
    while next > 0 {
        next -= 1;
        if !sub.is_live(next) {
            continue;
        }
        if keep(iterations) {
            let members = scanner.component(graph, next, live);
            if kept.len() == limit {
                kept.pop_front();
            }
            kept.push_back((next, members));
        }
        peel::remove_and_cascade(&mut sub, next, gamma, &mut removed)?;
        live -= removed.len();
        for &v in &removed {
            scanner.kill(v);
        }
        removed.clear();
        iterations += 1;
    }
    Ok((kept, iterations))
}

fn finish(graph: &WeightedGraph, kept: VecDeque<(VertexId, Vec<VertexId>)>, total: usize) -> GlobalResult {
    let mut communities = Communities::new();
    for (key, mut members) in kept.into_iter().rev() {
        members.sort_unstable();
        communities.push_flat(graph, key, members);
    }
    GlobalResult { communities, total }
}

fn check(gamma: usize, k: usize) -> Result<()> {
    if gamma == 0 {
        return Err(Error::InvalidGamma { got: 0, min: 1 });
    }
    if k == 0 {
        return Err(Error::InvalidK);
    }
    Ok(())
}

/// OnlineAll: repeatedly reduce to the γ-core, take the component of the
/// lightest vertex as the next community, and delete that vertex. Every
/// community is materialized; the last `k` are returned.
pub fn online_all(graph: &WeightedGraph, gamma: usize, k: usize) -> Result<GlobalResult> {
    check(gamma, k)?;
    let (kept, total) = global_loop(graph, gamma, |_| true, k)?;
    Ok(finish(graph, kept, total))
}

/// Forward: like [`online_all`] but computes components only for the last
/// `k` iterations, located by a counting pre-pass.
pub fn forward(graph: &WeightedGraph, gamma: usize, k: usize) -> Result<GlobalResult> {
    check(gamma, k)?;
    let total = peel::count_ic(&mut PrefixSubgraph::full(graph), gamma)?.count();
    let first = total.saturating_sub(k);
    let (kept, seen) = global_loop(graph, gamma, |i| i >= first, k)?;
    debug_assert_eq!(seen, total);
    Ok(finish(graph, kept, total))
}

/// Plain adjacency sets for the oracles.
fn adjacency(graph: &WeightedGraph) -> Vec<Vec<VertexId>> {
    graph
        .order()
        .map(|v| graph.higher(v).iter().chain(graph.lower(v)).copied().collect())
        .collect()
}

fn oracle_bound(graph: &WeightedGraph, max: usize) -> Result<()> {
    if graph.vertex_count() > max {
        return Err(Error::OracleBound { n: graph.vertex_count(), max });
    }
    Ok(())
}

/// All influential γ-communities, straight from the definition: for each
/// vertex `u`, take the γ-core of the subgraph induced by vertices at least
/// as heavy as `u`; if `u` survives, its component there is the community
/// with influence `ω(u)`. Polynomial time; refuses graphs above `max_vertices`.
pub fn oracle_enumerate(graph: &WeightedGraph, gamma: usize, max_vertices: usize) -> Result<Communities> {
    if gamma == 0 {
        return Err(Error::InvalidGamma { got: 0, min: 1 });
    }
    oracle_bound(graph, max_vertices)?;
    let adj = adjacency(graph);
    let n = graph.vertex_count();
    let mut out = Communities::new();
    // heaviest threshold first gives decreasing influence order
    for u in 0..n {
        let alive = core_of_prefix(&adj, u + 1, gamma);
        if !alive[u] {
            continue;
        }
        let members = component_in(&adj, &alive, u);
        out.push_flat(graph, u, members);
    }
    Ok(out)
}

/// Vertices `0..len` surviving the γ-core of the induced subgraph.
fn core_of_prefix(adj: &[Vec<VertexId>], len: usize, gamma: usize) -> Vec<bool> {
    let mut alive = vec![false; adj.len()];
    alive[..len].fill(true);
    let mut deg: Vec<usize> = (0..adj.len())
        .map(|v| if v < len { adj[v].iter().filter(|&&w| w < len).count() } else { 0 })
        .collect();
    let mut stack: Vec<VertexId> = (0..len).filter(|&v| deg[v] < gamma).collect();
    for &v in &stack {
        alive[v] = false;
    }
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] < gamma {
                    alive[w] = false;
                    stack.push(w);
                }
            }
        }
    }
    alive
}

fn component_in(adj: &[Vec<VertexId>], alive: &[bool], start: VertexId) -> Vec<VertexId> {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut out = Vec::new();
    while let Some(v) = stack.pop() {
        out.push(v);
        for &w in &adj[v] {
            if alive[w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Enumerates every vertex subset and returns, for each subset that is
/// connected with minimum degree at least γ, those that are maximal among
/// such subsets with the same minimum-weight vertex. Output is
/// `(min-weight vertex, sorted members)` by decreasing influence; more than
/// one entry per vertex would contradict uniqueness. Exponential; refuses
/// graphs above [`EXHAUSTIVE_MAX`] vertices.
pub fn exhaustive_enumerate(graph: &WeightedGraph, gamma: usize) -> Result<Vec<(VertexId, Vec<VertexId>)>> {
    oracle_bound(graph, EXHAUSTIVE_MAX)?;
    let n = graph.vertex_count();
    let masks: Vec<u32> = graph
        .order()
        .map(|v| {
            graph
                .higher(v)
                .iter()
                .chain(graph.lower(v))
                .fold(0u32, |m, &w| m | (1 << w))
        })
        .collect();
    let cohesive = |set: u32| -> bool {
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if ((masks[v] & set).count_ones() as usize) < gamma {
                return false;
            }
        }
        // connectivity by frontier expansion from the lowest bit
        let mut reach = set & set.wrapping_neg();
        loop {
            let mut grown = reach;
            let mut frontier = reach;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                grown |= masks[v] & set;
            }
            if grown == reach {
                return reach == set;
            }
            reach = grown;
        }
    };
    // bucket valid subsets by their lightest vertex (the highest set bit)
    let mut by_key: Vec<Vec<u32>> = vec![Vec::new(); n];
    for set in 1u32..(1u32 << n) {
        if cohesive(set) {
            let key = 31 - set.leading_zeros() as usize;
            by_key[key].push(set);
        }
    }
    let mut out = Vec::new();
    for (key, sets) in by_key.iter().enumerate() {
        for &s in sets {
            if sets.iter().any(|&t| t != s && t & s == s) {
                continue;
            }
            let members = (0..n).filter(|&v| s & (1 << v) != 0).collect();
            out.push((key, members));
        }
    }
    Ok(out)
}
