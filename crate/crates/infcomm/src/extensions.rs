//! Non-containment communities and influential γ-truss communities.

use std::collections::BTreeSet;

use crate::community::Communities;
use crate::dsu::KeyForest;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, PrefixSubgraph, VertexId, WeightedGraph};
use crate::peel::{self, KeyCvs};
use crate::search::{local_search_with, CommunityModel, QueryParams, SearchResult};

// ---------------------------------------------------------------------------
// Non-containment

/// Keynode peeling annotated with non-containment flags.
///
/// A keynode is flagged when nothing removed by its cascade still touches a
/// live vertex afterwards; its community then has no sub-community and equals
/// its group exactly. Flagged communities are pairwise disjoint.
#[derive(Debug, Clone, Default)]
pub struct NonContainment {
    pub keycvs: KeyCvs,
    /// One flag per keynode, parallel to `keycvs.keys()`.
    pub flags: Vec<bool>,
}

impl NonContainment {
    pub fn count(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }

    /// The `k` heaviest flagged groups, flat, by decreasing influence.
    pub fn communities(&self, graph: &WeightedGraph, k: usize) -> Communities {
        let mut out = Communities::new();
        let groups: Vec<(VertexId, &[VertexId])> = self.keycvs.groups().collect();
        for (i, &(key, group)) in groups.iter().enumerate().rev() {
            if out.len() == k {
                break;
            }
            if self.flags[i] {
                let mut members = group.to_vec();
                members.sort_unstable();
                out.push_flat(graph, key, members);
            }
        }
        out
    }
}

pub fn count_ic_noncontainment(sub: &mut PrefixSubgraph<'_>, gamma: usize) -> Result<NonContainment> {
    if gamma == 0 {
        return Err(Error::InvalidGamma { got: 0, min: 1 });
    }
    sub.restore();
    peel::gamma_core(sub, gamma, None)?;
    let mut flags = Vec::new();
    let keycvs = peel::peel_keynodes(sub, gamma as u32, 0, |sub, _key, group| {
        let isolated = group.iter().all(|&v| sub.neighbors(v).all(|w| !sub.is_live(w)));
        flags.push(isolated);
    });
    Ok(NonContainment { keycvs, flags })
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NonContainmentModel;

impl CommunityModel for NonContainmentModel {
    type Peeling = NonContainment;

    fn count(&self, sub: &mut PrefixSubgraph<'_>, gamma: usize) -> Result<NonContainment> {
        count_ic_noncontainment(sub, gamma)
    }

    fn total(&self, peeling: &NonContainment) -> usize {
        peeling.count()
    }

    fn enumerate(&self, sub: &PrefixSubgraph<'_>, peeling: &NonContainment, k: usize) -> Result<Communities> {
        Ok(peeling.communities(sub.graph(), k))
    }
}

/// Top-k non-containment influential γ-communities by local search.
pub fn local_search_noncontainment(graph: &WeightedGraph, params: QueryParams) -> Result<SearchResult> {
    local_search_with(graph, params, &NonContainmentModel)
}

/// Keeps the communities of `all` that contain no other community of `all`.
pub fn filter_noncontainment(graph: &WeightedGraph, all: &Communities) -> Communities {
    let sets: Vec<(VertexId, Vec<VertexId>)> = all.to_flat();
    let mut out = Communities::new();
    for (i, (key, members)) in sets.iter().enumerate() {
        let contains_other = sets.iter().enumerate().any(|(j, (_, other))| {
            j != i && other.len() < members.len() && other.iter().all(|v| members.binary_search(v).is_ok())
        });
        if !contains_other {
            out.push_flat(graph, *key, members.iter().copied());
        }
    }
    out
}

// ---------------------------------------------------------------------------
// γ-truss

/// Edge-level peeling state over a prefix: which edges are live, their
/// triangle support among live edges, and live degrees.
#[derive(Debug, Clone)]
pub struct TrussWorkspace<'g> {
    graph: &'g WeightedGraph,
    len: usize,
    threshold: u32,
    support: Vec<u32>,
    alive: Vec<bool>,
    queued: Vec<bool>,
    live_degree: Vec<u32>,
}

impl<'g> TrussWorkspace<'g> {
    fn new(sub: &PrefixSubgraph<'g>, gamma: usize) -> Self {
        let graph = sub.graph();
        let len = sub.len();
        let m = sub.edge_count();
        let mut ws = TrussWorkspace {
            graph,
            len,
            threshold: (gamma - 2) as u32,
            support: vec![0; m],
            alive: vec![true; m],
            queued: vec![false; m],
            live_degree: (0..len).map(|v| sub.degree(v) as u32).collect(),
        };
        ws.count_triangles();
        ws
    }

    /// Support initialization over a degree-ordered orientation.
    fn count_triangles(&mut self) {
        let (graph, len) = (self.graph, self.len);
        let rank = |v: VertexId| (self.live_degree[v], v);
        let mut offsets = vec![0usize; len + 1];
        for v in 0..len {
            offsets[v + 1] = offsets[v]
                + graph.prefix_neighbors(v, len).filter(|&(w, _)| rank(w) > rank(v)).count();
        }
        let mut out: Vec<(VertexId, EdgeId)> = Vec::with_capacity(offsets[len]);
        for v in 0..len {
            out.extend(graph.prefix_neighbors(v, len).filter(|&(w, _)| rank(w) > rank(v)));
        }
        let mut mark = vec![usize::MAX; len];
        let mut mark_edge = vec![0; len];
        for v in 0..len {
            for &(w, e) in &out[offsets[v]..offsets[v + 1]] {
                mark[w] = v;
                mark_edge[w] = e;
            }
            for &(w, e_vw) in &out[offsets[v]..offsets[v + 1]] {
                for &(x, e_wx) in &out[offsets[w]..offsets[w + 1]] {
                    if mark[x] == v {
                        self.support[e_vw] += 1;
                        self.support[e_wx] += 1;
                        self.support[mark_edge[x]] += 1;
                    }
                }
            }
        }
    }

    fn enqueue(&mut self, e: EdgeId, queue: &mut Vec<EdgeId>) {
        if !self.queued[e] {
            self.queued[e] = true;
            queue.push(e);
        }
    }

    /// Removes queued edges in FIFO order, cascading through supports.
    fn drain(&mut self, queue: &mut Vec<EdgeId>, sink: &mut Option<&mut Vec<EdgeId>>, supports: &mut Option<&mut Vec<u32>>) {
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            head += 1;
            let (a, b) = self.graph.edge(e);
            let (scan, other) = if self.live_degree[a] <= self.live_degree[b] { (a, b) } else { (b, a) };
            for (c, e_sc) in self.graph.prefix_neighbors(scan, self.len) {
                if c == other || !self.alive[e_sc] {
                    continue;
                }
                let Some(e_oc) = self.graph.edge_between(other, c) else { continue };
                if !self.alive[e_oc] {
                    continue;
                }
                for f in [e_sc, e_oc] {
                    if self.support[f] == self.threshold {
                        self.enqueue(f, queue);
                    }
                    self.support[f] -= 1;
                }
            }
            if let Some(s) = supports.as_deref_mut() {
                s.push(self.support[e]);
            }
            self.alive[e] = false;
            self.live_degree[a] -= 1;
            self.live_degree[b] -= 1;
            if let Some(s) = sink.as_deref_mut() {
                s.push(e);
            }
        }
        queue.clear();
    }

    fn reduce(&mut self, sink: &mut Option<&mut Vec<EdgeId>>, supports: &mut Option<&mut Vec<u32>>) {
        let mut queue = Vec::new();
        for e in 0..self.alive.len() {
            if self.alive[e] && self.support[e] < self.threshold {
                self.enqueue(e, &mut queue);
            }
        }
        self.drain(&mut queue, sink, supports);
    }

    /// A vertex is live while it has a live incident edge.
    pub fn is_live(&self, v: VertexId) -> bool {
        v < self.len && self.live_degree[v] > 0
    }

    pub fn live_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.len).filter(move |&v| self.live_degree[v] > 0)
    }

    pub fn live_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.alive.len()).filter(move |&e| self.alive[e])
    }

    pub fn support(&self, e: EdgeId) -> Option<u32> {
        self.alive.get(e).copied().unwrap_or(false).then(|| self.support[e])
    }
}

fn check_truss_gamma(gamma: usize) -> Result<()> {
    if gamma < 2 {
        return Err(Error::InvalidGamma { got: gamma, min: 2 });
    }
    Ok(())
}

/// γ-truss of the prefix: edges in fewer than `γ - 2` triangles are removed
/// until none remain, and vertices left without edges drop out.
pub fn gamma_truss<'g>(sub: &PrefixSubgraph<'g>, gamma: usize, cvs_sink: Option<&mut Vec<EdgeId>>) -> Result<TrussWorkspace<'g>> {
    check_truss_gamma(gamma)?;
    let mut ws = TrussWorkspace::new(sub, gamma);
    ws.reduce(&mut { cvs_sink }, &mut None);
    Ok(ws)
}

/// Keynodes and the removed-edge sequence of γ-truss peeling.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeKeyCvs {
    pub keys: Vec<VertexId>,
    /// Start of each keynode's group in `cvs_edges`, parallel to `keys`.
    pub group_starts: Vec<usize>,
    pub cvs_edges: Vec<EdgeId>,
    /// Triangle support of each edge when it was removed.
    pub supports: Vec<u32>,
}

impl EdgeKeyCvs {
    pub fn count(&self) -> usize {
        self.keys.len()
    }

    pub fn group(&self, i: usize) -> &[EdgeId] {
        let end = self.group_starts.get(i + 1).copied().unwrap_or(self.cvs_edges.len());
        &self.cvs_edges[self.group_starts[i]..end]
    }
}

/// Counts influential γ-truss communities: reduce to the γ-truss, then
/// repeatedly remove every edge of the lightest live vertex and restore the
/// truss. Incident edges are queued first, then the cascade runs FIFO.
pub fn count_icc_truss(sub: &PrefixSubgraph<'_>, gamma: usize) -> Result<EdgeKeyCvs> {
    check_truss_gamma(gamma)?;
    let mut ws = TrussWorkspace::new(sub, gamma);
    ws.reduce(&mut None, &mut None);
    let mut out = EdgeKeyCvs::default();
    let mut queue = Vec::new();
    let mut next = ws.len;
    while next > 0 {
        next -= 1;
        if !ws.is_live(next) {
            continue;
        }
        let u = next;
        out.keys.push(u);
        out.group_starts.push(out.cvs_edges.len());
        let incident: Vec<EdgeId> = ws
            .graph
            .prefix_neighbors(u, ws.len)
            .filter(|&(_, e)| ws.alive[e])
            .map(|(_, e)| e)
            .collect();
        for e in incident {
            ws.enqueue(e, &mut queue);
        }
        ws.drain(&mut queue, &mut Some(&mut out.cvs_edges), &mut Some(&mut out.supports));
    }
    Ok(out)
}

/// Enumerates the top-`k` γ-truss communities from `ekc`, nested, by
/// decreasing influence. Each group claims the endpoints of its edges that no
/// heavier community has claimed; endpoints already claimed link their
/// community in as a child.
pub fn enum_icc_truss(sub: &PrefixSubgraph<'_>, ekc: &EdgeKeyCvs, k: usize) -> Result<Communities> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let graph = sub.graph();
    let mut forest = KeyForest::new();
    forest.reserve_prefix(sub.len());
    let mut entry_of = vec![usize::MAX; sub.len()];
    let mut out = Communities::new();
    let first = ekc.count().saturating_sub(k);
    for i in (first..ekc.count()).rev() {
        let key = ekc.keys[i];
        forest.assign(key, key);
        let mut group = vec![key];
        let mut children = Vec::new();
        for &e in ekc.group(i) {
            let (a, b) = graph.edge(e);
            for x in [a, b] {
                match forest.find(x) {
                    None => {
                        forest.assign(x, key);
                        group.push(x);
                    }
                    Some(root) if root != key => {
                        children.push(entry_of[root]);
                        forest.absorb(root, key);
                    }
                    Some(_) => {}
                }
            }
        }
        entry_of[key] = out.push_nested(graph, key, group, children);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct TrussModel;

impl CommunityModel for TrussModel {
    type Peeling = EdgeKeyCvs;

    fn min_gamma(&self) -> usize {
        2
    }

    fn count(&self, sub: &mut PrefixSubgraph<'_>, gamma: usize) -> Result<EdgeKeyCvs> {
        count_icc_truss(sub, gamma)
    }

    fn total(&self, peeling: &EdgeKeyCvs) -> usize {
        peeling.count()
    }

    fn enumerate(&self, sub: &PrefixSubgraph<'_>, peeling: &EdgeKeyCvs, k: usize) -> Result<Communities> {
        enum_icc_truss(sub, peeling, k)
    }
}

/// Top-k influential γ-truss communities by local search.
pub fn local_search_truss(graph: &WeightedGraph, params: QueryParams) -> Result<SearchResult> {
    local_search_with(graph, params, &TrussModel)
}

/// Global truss search: count and enumerate on the whole graph.
pub fn global_truss(graph: &WeightedGraph, gamma: usize, k: usize) -> Result<Communities> {
    let sub = PrefixSubgraph::full(graph);
    let ekc = count_icc_truss(&sub, gamma)?;
    enum_icc_truss(&sub, &ekc, k)
}

/// All influential γ-truss communities from the definition: for each vertex
/// `u`, compute the γ-truss of the prefix down to `u` by repeated support
/// recounting; if `u` keeps an edge, its component is the community with
/// influence `ω(u)`. Refuses graphs above `max_vertices`.
pub fn truss_oracle(graph: &WeightedGraph, gamma: usize, max_vertices: usize) -> Result<Communities> {
    check_truss_gamma(gamma)?;
    if graph.vertex_count() > max_vertices {
        return Err(Error::OracleBound { n: graph.vertex_count(), max: max_vertices });
    }
    let need = gamma - 2;
    let mut out = Communities::new();
    for u in graph.order() {
        let len = u + 1;
        let mut adj: Vec<BTreeSet<VertexId>> = (0..len)
            .map(|v| {
                graph
                    .higher(v)
                    .iter()
                    .chain(graph.lower(v).iter().filter(|&&w| w < len))
                    .copied()
                    .collect()
            })
            .collect();
        loop {
            let mut doomed = Vec::new();
            for a in 0..len {
                for &b in adj[a].range(..a) {
                    if adj[a].intersection(&adj[b]).count() < need {
                        doomed.push((a, b));
                    }
                }
            }
            if doomed.is_empty() {
                break;
            }
            for (a, b) in doomed {
                adj[a].remove(&b);
                adj[b].remove(&a);
            }
        }
        if adj[u].is_empty() {
            continue;
        }
        let mut seen = vec![false; len];
        seen[u] = true;
        let mut stack = vec![u];
        let mut members = Vec::new();
        while let Some(v) = stack.pop() {
            members.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push_flat(graph, u, members);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::{oracle_enumerate, DEFAULT_ORACLE_MAX};

    fn graph(n: usize, edges: &[(usize, usize)]) -> WeightedGraph {
        let w: Vec<f64> = (1..=n).map(|x| x as f64).collect();
        let e: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
        WeightedGraph::from_indexed(&w, &e).unwrap().0
    }

    fn clique(vs: &[usize]) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                e.push((a, b));
            }
        }
        e
    }

    fn weights(g: &WeightedGraph, vs: &[VertexId]) -> Vec<usize> {
        let mut w: Vec<usize> = vs.iter().map(|&v| g.weight(v) as usize).collect();
        w.sort_unstable();
        w
    }

    fn apex_k4() -> WeightedGraph {
        let mut e = clique(&[2, 3, 4, 5]);
        e.extend([(1, 2), (1, 3), (1, 4)]);
        graph(5, &e)
    }

    #[test]
    fn noncontainment_apex() {
        let g = apex_k4();
        let mut sub = PrefixSubgraph::full(&g);
        let nc = count_ic_noncontainment(&mut sub, 3).unwrap();
        assert_eq!(nc.flags, vec![false, true]);
        assert_eq!(nc.count(), 1);
        let cs = nc.communities(&g, 5);
        assert_eq!(cs.len(), 1);
        assert_eq!(weights(&g, &cs.get(0).unwrap().members()), vec![2, 3, 4, 5]);
        let oracle = oracle_enumerate(&g, 3, DEFAULT_ORACLE_MAX).unwrap();
        assert_eq!(filter_noncontainment(&g, &oracle).to_flat(), cs.to_flat());
    }

    #[test]
    fn noncontainment_triangles_and_k5() {
        let mut e = clique(&[1, 2, 3]);
        e.extend(clique(&[4, 5, 6]));
        let g = graph(6, &e);
        let nc = count_ic_noncontainment(&mut PrefixSubgraph::full(&g), 2).unwrap();
        assert_eq!(nc.flags, vec![true, true]);

        let g = graph(5, &clique(&[1, 2, 3, 4, 5]));
        let nc = count_ic_noncontainment(&mut PrefixSubgraph::full(&g), 3).unwrap();
        assert_eq!(nc.flags, vec![false, true]);
        let r = local_search_noncontainment(&g, QueryParams::new(3, 2)).unwrap();
        assert_eq!(r.communities.len(), 1);
        assert!(r.fewer_than_k);
    }

    #[test]
    fn truss_basics() {
        let g = graph(5, &clique(&[1, 2, 3, 4, 5]));
        let sub = PrefixSubgraph::full(&g);
        let ws = gamma_truss(&sub, 5, None).unwrap();
        assert_eq!(ws.live_edges().count(), 10);
        assert!(ws.live_edges().all(|e| ws.support(e) == Some(3)));

        let g4 = graph(4, &clique(&[1, 2, 3, 4]));
        let mut removed = Vec::new();
        let ws = gamma_truss(&PrefixSubgraph::full(&g4), 5, Some(&mut removed)).unwrap();
        assert_eq!(ws.live_vertices().count(), 0);
        assert_eq!(removed.len(), 6);

        let c5 = graph(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]);
        let ws = gamma_truss(&PrefixSubgraph::full(&c5), 3, None).unwrap();
        assert_eq!(ws.live_edges().count(), 0);
    }

    #[test]
    fn truss_counting_on_cliques() {
        let g = graph(5, &clique(&[1, 2, 3, 4, 5]));
        let sub = PrefixSubgraph::full(&g);
        let ekc = count_icc_truss(&sub, 4).unwrap();
        assert_eq!(weights(&g, &ekc.keys), vec![1, 2]);
        assert_eq!(ekc.group(0).len(), 4);
        assert_eq!(ekc.group(1).len(), 6);
        let cs = enum_icc_truss(&sub, &ekc, 2).unwrap();
        assert_eq!(weights(&g, &cs.get(0).unwrap().members()), vec![2, 3, 4, 5]);
        assert_eq!(weights(&g, &cs.get(1).unwrap().members()), vec![1, 2, 3, 4, 5]);
        assert_eq!(cs.get(1).unwrap().children().count(), 1);
        assert_eq!(truss_oracle(&g, 4, 12).unwrap().to_flat(), cs.to_flat());

        let g4 = graph(4, &clique(&[1, 2, 3, 4]));
        let sub = PrefixSubgraph::full(&g4);
        let ekc = count_icc_truss(&sub, 4).unwrap();
        assert_eq!(weights(&g4, &ekc.keys), vec![1]);
        let cs = enum_icc_truss(&sub, &ekc, 1).unwrap();
        assert_eq!(weights(&g4, &cs.get(0).unwrap().members()), vec![1, 2, 3, 4]);
    }

    #[test]
    fn triangle_free_has_no_truss_communities() {
        let g = graph(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]);
        let sub = PrefixSubgraph::full(&g);
        assert_eq!(count_icc_truss(&sub, 3).unwrap().count(), 0);
        assert!(truss_oracle(&g, 3, 12).unwrap().is_empty());
        let r = local_search_truss(&g, QueryParams::new(3, 2)).unwrap();
        assert!(r.communities.is_empty());
        assert!(r.fewer_than_k);
    }

    #[test]
    fn disjoint_k4s() {
        let mut e = clique(&[1, 2, 3, 4]);
        e.extend(clique(&[5, 6, 7, 8]));
        let g = graph(8, &e);
        let cs = global_truss(&g, 4, 2).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(weights(&g, &cs.get(0).unwrap().members()), vec![5, 6, 7, 8]);
        assert_eq!(weights(&g, &cs.get(1).unwrap().members()), vec![1, 2, 3, 4]);
        assert_eq!(cs.get(1).unwrap().children().count(), 0);
    }

    #[test]
    fn truss_gamma_below_two_rejected() {
        let g = graph(3, &clique(&[1, 2, 3]));
        assert!(matches!(
            local_search_truss(&g, QueryParams::new(1, 1)),
            Err(Error::InvalidGamma { min: 2, .. })
        ));
    }
}
