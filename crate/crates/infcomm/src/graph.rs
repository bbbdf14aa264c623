//! Vertex-weighted graphs organized for prefix access.
//!
//! Vertices are renumbered at ingestion so that [`VertexId`] `0` is the
//! heaviest vertex and `n - 1` the lightest. Equal weights are ordered by
//! label: shorter labels first, then bytewise, which keeps integer labels in
//! numeric order. Under this numbering the vertices with weight at least `τ`
//! are exactly a prefix `0..len`, and every threshold is handled internally
//! as a prefix length.
//!
//! Each adjacency list is split into the heavier half `N≥(u)` (ids below
//! `u`) and the lighter half `N<(u)` (ids above `u`), both sorted. The
//! heavier halves, laid end to end in vertex order, enumerate the edges of
//! every prefix contiguously, so the edges of `G≥τ` are the ids
//! `0..edge_offset(len)`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::Range;

use crate::error::{Error, Result};

/// Dense vertex id, equal to the vertex's rank in decreasing weight order.
pub type VertexId = usize;

/// Dense edge id; the edges of a prefix `0..len` are `0..edge_offset(len)`.
pub type EdgeId = usize;

/// Counts collected while cleaning an input edge list.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestReport {
    pub vertices: usize,
    pub edges: usize,
    pub self_loops: usize,
    pub duplicate_edges: usize,
}

/// Immutable undirected simple graph with vertices in decreasing weight order.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
    weights: Vec<f64>,
    // N≥: heavier neighbors; edge ids are positions in `higher`.
    higher_offsets: Vec<usize>,
    higher: Vec<VertexId>,
    // lighter endpoint of each edge, indexed by edge id
    edge_low: Vec<VertexId>,
    // N<: lighter neighbors together with the id of the connecting edge.
    lower_offsets: Vec<usize>,
    lower: Vec<VertexId>,
    lower_edges: Vec<EdgeId>,
}

/// Label comparison used to break weight ties.
pub fn label_order(a: &str, b: &str) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.as_bytes().cmp(b.as_bytes()))
}

impl WeightedGraph {
    /// Builds a graph from labelled edges and a weight table.
    ///
    /// Every vertex in `weights` becomes a vertex of the graph, including
    /// isolated ones. Self-loops and repeated edges are dropped and counted
    /// in the returned report.
    pub fn ingest<E, S, W, T>(edges: E, weights: W) -> Result<(Self, IngestReport)>
    where
        E: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
        W: IntoIterator<Item = (T, f64)>,
        T: Into<String>,
    {
        let mut labels = Vec::new();
        let mut table = Vec::new();
        let mut position: HashMap<String, usize> = HashMap::new();
        for (label, weight) in weights {
            let label = label.into();
            if !weight.is_finite() {
                return Err(Error::NonFiniteWeight { label, value: weight });
            }
            if position.contains_key(&label) {
                return Err(Error::DuplicateWeight(label));
            }
            position.insert(label.clone(), labels.len());
            labels.push(label);
            table.push(weight);
        }
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *position
                .get(a)
                .ok_or_else(|| Error::MissingWeight(a.to_string()))?;
            let ib = *position
                .get(b)
                .ok_or_else(|| Error::MissingWeight(b.to_string()))?;
            pairs.push((ia, ib));
        }
        Ok(Self::assemble(labels, table, pairs))
    }

    /// Builds a graph whose vertex `i` carries label `i` and weight `weights[i]`.
    ///
    /// Convenient for generated graphs. The returned graph renumbers vertices
    /// by weight, so use [`WeightedGraph::vertex`] with the decimal label to
    /// find where input vertex `i` went.
    pub fn from_indexed(weights: &[f64], edges: &[(usize, usize)]) -> Result<(Self, IngestReport)> {
        let n = weights.len();
        for (i, &w) in weights.iter().enumerate() {
            if !w.is_finite() {
                return Err(Error::NonFiniteWeight { label: i.to_string(), value: w });
            }
        }
        for &(a, b) in edges {
            for index in [a, b] {
                if index >= n {
                    return Err(Error::EndpointOutOfRange { index, n });
                }
            }
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        Ok(Self::assemble(labels, weights.to_vec(), edges.to_vec()))
    }

    fn assemble(labels: Vec<String>, weights: Vec<f64>, pairs: Vec<(usize, usize)>) -> (Self, IngestReport) {
        let n = labels.len();
        let mut by_rank: Vec<usize> = (0..n).collect();
        by_rank.sort_by(|&a, &b| {
            weights[b]
                .total_cmp(&weights[a])
                .then_with(|| label_order(&labels[a], &labels[b]))
        });
        let mut rank_of = vec![0; n];
        for (rank, &i) in by_rank.iter().enumerate() {
            rank_of[i] = rank;
        }

        let mut report = IngestReport { vertices: n, ..Default::default() };
        // (lighter, heavier) so that sorting yields edge ids in prefix order
        let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            if a == b {
                report.self_loops += 1;
                continue;
            }
            let (ra, rb) = (rank_of[a], rank_of[b]);
            edges.push((ra.max(rb), ra.min(rb)));
        }
        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        report.duplicate_edges = before - edges.len();
        report.edges = edges.len();

        let mut higher_offsets = vec![0; n + 1];
        let mut lower_offsets = vec![0; n + 1];
        for &(lo, hi) in &edges {
            higher_offsets[lo + 1] += 1;
            lower_offsets[hi + 1] += 1;
        }
        for v in 0..n {
            higher_offsets[v + 1] += higher_offsets[v];
            lower_offsets[v + 1] += lower_offsets[v];
        }
        let higher: Vec<VertexId> = edges.iter().map(|&(_, hi)| hi).collect();
        let edge_low: Vec<VertexId> = edges.iter().map(|&(lo, _)| lo).collect();
        let mut cursor = lower_offsets.clone();
        let mut lower = vec![0; edges.len()];
        let mut lower_edges = vec![0; edges.len()];
        // edges are sorted by lighter endpoint, so each N< list comes out sorted
        for (e, &(lo, hi)) in edges.iter().enumerate() {
            lower[cursor[hi]] = lo;
            lower_edges[cursor[hi]] = e;
            cursor[hi] += 1;
        }

        let labels: Vec<String> = by_rank.iter().map(|&i| labels[i].clone()).collect();
        let weights: Vec<f64> = by_rank.iter().map(|&i| weights[i]).collect();
        let index = labels.iter().enumerate().map(|(v, l)| (l.clone(), v)).collect();
        let graph = WeightedGraph {
            labels,
            index,
            weights,
            higher_offsets,
            higher,
            edge_low,
            lower_offsets,
            lower,
            lower_edges,
        };
        (graph, report)
    }

    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    pub fn edge_count(&self) -> usize {
        self.higher.len()
    }

    /// `size(G) = |V| + |E|`.
    pub fn size(&self) -> usize {
        self.vertex_count() + self.edge_count()
    }

    /// Vertices in strictly decreasing (tie-broken) weight order.
    pub fn order(&self) -> Range<VertexId> {
        0..self.vertex_count()
    }

    pub fn weight(&self, v: VertexId) -> f64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    /// `N≥(v)`: neighbors heavier than `v`, ascending by id.
    pub fn higher(&self, v: VertexId) -> &[VertexId] {
        &self.higher[self.higher_offsets[v]..self.higher_offsets[v + 1]]
    }

    /// `N<(v)`: neighbors lighter than `v`, ascending by id.
    pub fn lower(&self, v: VertexId) -> &[VertexId] {
        &self.lower[self.lower_offsets[v]..self.lower_offsets[v + 1]]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.higher(v).len() + self.lower(v).len()
    }

    /// Number of edges induced by the prefix `0..len`.
    pub fn edge_offset(&self, len: usize) -> usize {
        self.higher_offsets[len]
    }

    /// `size(G≥τ)` for the prefix of `len` vertices.
    pub fn prefix_size(&self, len: usize) -> usize {
        len + self.edge_offset(len)
    }

    /// Endpoints of edge `e` as `(lighter, heavier)`.
    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.edge_low[e], self.higher[e])
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        let (lo, hi) = if a > b { (a, b) } else { (b, a) };
        if lo == hi {
            return None;
        }
        self.higher(lo)
            .binary_search(&hi)
            .ok()
            .map(|pos| self.higher_offsets[lo] + pos)
    }

    /// Neighbors of `v` inside the prefix `0..len`, with connecting edge ids.
    ///
    /// Runs in time proportional to the number of neighbors returned plus one.
    pub fn prefix_neighbors(&self, v: VertexId, len: usize) -> impl Iterator<Item = (VertexId, EdgeId)> + '_ {
        let base = self.higher_offsets[v];
        let lo = self.lower_offsets[v];
        let hi = self.lower_offsets[v + 1];
        self.higher(v)
            .iter()
            .enumerate()
            .map(move |(j, &w)| (w, base + j))
            .chain(
                (lo..hi)
                    .map(move |j| (self.lower[j], self.lower_edges[j]))
                    .take_while(move |&(w, _)| w < len),
            )
    }

    /// Number of leading vertices whose weight is at least `tau`.
    pub fn prefix_len_for(&self, tau: f64) -> usize {
        self.weights.partition_point(|&w| w >= tau)
    }
}

/// The induced subgraph `G≥τ` over a prefix of the weight order, with a
/// peeling workspace.
///
/// `degree` tracks degrees inside the prefix and is updated incrementally as
/// the prefix grows. Peeling routines work on `live_degree` and `removed`,
/// which [`PrefixSubgraph::restore`] resets from `degree`.
#[derive(Debug, Clone)]
pub struct PrefixSubgraph<'g> {
    graph: &'g WeightedGraph,
    len: usize,
    pub(crate) degree: Vec<u32>,
    pub(crate) live_degree: Vec<u32>,
    pub(crate) removed: Vec<bool>,
    dirty: bool,
}

impl<'g> PrefixSubgraph<'g> {
    /// `G≥τ` over exactly the first `len` vertices (clamped to `n`).
    pub fn with_len(graph: &'g WeightedGraph, len: usize) -> Self {
        let mut sub = PrefixSubgraph {
            graph,
            len: 0,
            degree: Vec::new(),
            live_degree: Vec::new(),
            removed: Vec::new(),
            dirty: false,
        };
        sub.extend_to(len);
        sub.restore();
        sub
    }

    /// `G≥τ` for a raw weight threshold; ties at `tau` are all included.
    pub fn at_threshold(graph: &'g WeightedGraph, tau: f64) -> Self {
        Self::with_len(graph, graph.prefix_len_for(tau))
    }

    pub fn full(graph: &'g WeightedGraph) -> Self {
        Self::with_len(graph, graph.vertex_count())
    }

    pub fn graph(&self) -> &'g WeightedGraph {
        self.graph
    }

    /// Number of included vertices; the prefix is `0..len()`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_offset(self.len)
    }

    pub fn size(&self) -> usize {
        self.graph.prefix_size(self.len)
    }

    pub fn is_full(&self) -> bool {
        self.len == self.graph.vertex_count()
    }

    /// Weight of the lightest included vertex.
    pub fn tau(&self) -> Option<f64> {
        self.len.checked_sub(1).map(|v| self.graph.weight(v))
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v < self.len
    }

    pub fn is_live(&self, v: VertexId) -> bool {
        v < self.len && !self.removed[v]
    }

    pub fn live_degree(&self, v: VertexId) -> usize {
        self.live_degree[v] as usize
    }

    /// Degree of `v` within the prefix, ignoring peeling.
    pub fn degree(&self, v: VertexId) -> usize {
        self.degree[v] as usize
    }

    /// Neighbors of `v` within the prefix, regardless of peeling state.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + 'g {
        let graph = self.graph;
        let len = self.len;
        graph
            .higher(v)
            .iter()
            .copied()
            .chain(graph.lower(v).iter().copied().take_while(move |&w| w < len))
    }

    pub fn live_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.len).filter(move |&v| !self.removed[v])
    }

    /// Undo all peeling, making every included vertex live again.
    pub fn restore(&mut self) {
        if self.dirty || self.live_degree.len() != self.len {
            self.live_degree.clone_from(&self.degree);
            self.removed.clear();
            self.removed.resize(self.len, false);
            self.dirty = false;
        }
    }

    pub(crate) fn mark_dirty(&mut self) {
        self.dirty = true;
    }

    /// Adds vertices in weight order until the prefix holds `len` vertices.
    fn extend_to(&mut self, len: usize) {
        let target = len.min(self.graph.vertex_count());
        while self.len < target {
            let u = self.len;
            let up = self.graph.higher(u);
            self.degree.push(up.len() as u32);
            for &w in up {
                self.degree[w] += 1;
            }
            self.len += 1;
        }
        self.dirty = true;
    }

    /// Grows to the smallest prefix with `size() >= target_size`, or to the
    /// whole graph if no prefix is that large. Returns the new length.
    ///
    /// Cost is linear in the size added, plus one restore of the peeling state.
    pub fn grow_to_size(&mut self, target_size: usize) -> usize {
        let n = self.graph.vertex_count();
        let mut len = self.len;
        while len < n && self.graph.prefix_size(len) < target_size {
            len += 1;
        }
        if len != self.len {
            self.extend_to(len);
        }
        self.restore();
        self.len
    }

    /// Grows to include the first `len` vertices.
    pub fn grow_to_len(&mut self, len: usize) {
        if len > self.len {
            self.extend_to(len);
        }
        self.restore();
    }
}
