//! γ-core peeling, keynode counting and community enumeration.
//!
//! Counting repeatedly removes the lightest live vertex of a γ-core (a
//! keynode) and re-establishes the γ-core. Each keynode corresponds to exactly
//! one influential γ-community. The removal order (`cvs`) is enough to
//! rebuild those communities afterwards: the group of a keynode is the run of
//! `cvs` from the keynode up to the next keynode, and a community is its
//! group plus the communities of heavier keynodes that its group touches.

use crate::community::Communities;
use crate::dsu::KeyForest;
use crate::error::{Error, Result};
use crate::graph::{PrefixSubgraph, VertexId};

/// Keynodes and the community-aware vertex sequence produced by peeling.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KeyCvs {
    keys: Vec<VertexId>,
    cvs: Vec<VertexId>,
    key_flags: Vec<bool>,
}

impl KeyCvs {
    /// Keynodes by increasing weight.
    pub fn keys(&self) -> &[VertexId] {
        &self.keys
    }

    /// Peeled vertices in removal order; `keys` is a subsequence.
    pub fn cvs(&self) -> &[VertexId] {
        &self.cvs
    }

    pub fn count(&self) -> usize {
        self.keys.len()
    }

    pub fn is_key(&self, v: VertexId) -> bool {
        self.key_flags.get(v).copied().unwrap_or(false)
    }

    /// `(keynode, gp(keynode))` for every keynode, by increasing weight.
    pub fn groups(&self) -> impl Iterator<Item = (VertexId, &[VertexId])> + '_ {
        GroupIter { kc: self, rest: &self.cvs }
    }

    /// Concatenates fragments, the first argument holding the lighter keynodes.
    pub fn concat(fragments: &[&KeyCvs]) -> KeyCvs {
        let mut out = KeyCvs::default();
        for f in fragments {
            out.keys.extend_from_slice(&f.keys);
            out.cvs.extend_from_slice(&f.cvs);
            if out.key_flags.len() < f.key_flags.len() {
                out.key_flags.resize(f.key_flags.len(), false);
            }
            for &k in &f.keys {
                out.key_flags[k] = true;
            }
        }
        out
    }
}

struct GroupIter<'a> {
    kc: &'a KeyCvs,
    rest: &'a [VertexId],
}

impl<'a> Iterator for GroupIter<'a> {
    type Item = (VertexId, &'a [VertexId]);

    fn next(&mut self) -> Option<Self::Item> {
        let (&first, tail) = self.rest.split_first()?;
        debug_assert!(self.kc.is_key(first));
        let end = tail.iter().position(|&v| self.kc.is_key(v)).map_or(self.rest.len(), |p| p + 1);
        let (group, rest) = self.rest.split_at(end);
        self.rest = rest;
        Some((first, group))
    }
}

fn check_gamma(gamma: usize) -> Result<u32> {
    if gamma == 0 {
        return Err(Error::InvalidGamma { got: gamma, min: 1 });
    }
    Ok(gamma as u32)
}

/// Drains `queue` in FIFO order, removing each vertex and enqueueing every
/// neighbor whose degree is about to drop below `gamma`. A vertex is
/// enqueued at most once because degrees only fall.
fn cascade(sub: &mut PrefixSubgraph<'_>, queue: &mut Vec<VertexId>, gamma: u32, mut sink: Option<&mut Vec<VertexId>>) {
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        for w in sub.neighbors(v) {
            if sub.removed[w] {
                continue;
            }
            if sub.live_degree[w] == gamma {
                queue.push(w);
            }
            sub.live_degree[w] -= 1;
        }
        sub.removed[v] = true;
        if let Some(s) = sink.as_deref_mut() {
            s.push(v);
        }
    }
    queue.clear();
}

/// Reduces the live part of `sub` to its γ-core, appending removed vertices
/// to `cvs_sink` in removal order.
pub fn gamma_core(sub: &mut PrefixSubgraph<'_>, gamma: usize, cvs_sink: Option<&mut Vec<VertexId>>) -> Result<()> {
    let gamma = check_gamma(gamma)?;
    sub.mark_dirty();
    let mut queue: Vec<VertexId> = sub.live_vertices().filter(|&v| sub.live_degree[v] < gamma).collect();
    cascade(sub, &mut queue, gamma, cvs_sink);
    Ok(())
}

/// Removes `u` from a γ-core and restores the γ-core, appending every removed
/// vertex (starting with `u`) to `cvs`.
pub fn remove_and_cascade(sub: &mut PrefixSubgraph<'_>, u: VertexId, gamma: usize, cvs: &mut Vec<VertexId>) -> Result<()> {
    let gamma = check_gamma(gamma)?;
    debug_assert!(sub.is_live(u));
    sub.mark_dirty();
    let mut queue = vec![u];
    cascade(sub, &mut queue, gamma, Some(cvs));
    Ok(())
}

/// Peels keynodes lighter than the first `stop_len` vertices, calling
/// `after_remove` with each keynode's group right after its removal. `sub`
/// must already be a γ-core.
pub(crate) fn peel_keynodes<F>(sub: &mut PrefixSubgraph<'_>, gamma: u32, stop_len: usize, mut after_remove: F) -> KeyCvs
where
    F: FnMut(&PrefixSubgraph<'_>, VertexId, &[VertexId]),
{
    sub.mark_dirty();
    let mut kc = KeyCvs { key_flags: vec![false; sub.len()], ..Default::default() };
    let mut queue = Vec::new();
    // the lightest live vertex never moves back up, so one downward sweep
    // over the weight order finds every argmin
    let mut next = sub.len();
    while next > stop_len {
        next -= 1;
        if sub.removed[next] {
            continue;
        }
        let u = next;
        kc.keys.push(u);
        kc.key_flags[u] = true;
        let start = kc.cvs.len();
        queue.push(u);
        cascade(sub, &mut queue, gamma, Some(&mut kc.cvs));
        after_remove(sub, u, &kc.cvs[start..]);
    }
    kc
}

/// Counts the influential γ-communities of `sub`, returning the keynodes and
/// removal sequence. The subgraph is left fully peeled.
pub fn count_ic(sub: &mut PrefixSubgraph<'_>, gamma: usize) -> Result<KeyCvs> {
    construct_cvs(sub, gamma, 0)
}

/// Like [`count_ic`], but stops before the first keynode inside the prefix
/// of `stop_len` vertices (that is, with weight at least the previous
/// threshold). With `stop_len == 0` the result equals [`count_ic`]'s.
pub fn construct_cvs(sub: &mut PrefixSubgraph<'_>, gamma: usize, stop_len: usize) -> Result<KeyCvs> {
    let g = check_gamma(gamma)?;
    sub.restore();
    gamma_core(sub, gamma, None)?;
    Ok(peel_keynodes(sub, g, stop_len, |_, _, _| {}))
}

/// Builds nested communities from groups processed in decreasing keynode
/// weight. Shared by batch and progressive enumeration; the forest persists
/// across calls.
#[derive(Debug, Default)]
pub(crate) struct Enumerator {
    forest: KeyForest,
    entry_of: Vec<usize>,
    pub(crate) out: Communities,
}

impl Enumerator {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    /// Records community `IC(key)` with group `group`, returning its index.
    pub(crate) fn process(&mut self, sub: &PrefixSubgraph<'_>, key: VertexId, group: &[VertexId]) -> usize {
        self.forest.reserve_prefix(sub.len());
        if self.entry_of.len() < sub.len() {
            self.entry_of.resize(sub.len(), usize::MAX);
        }
        for &v in group {
            self.forest.assign(v, key);
        }
        let mut children = Vec::new();
        for &v in group {
            for w in sub.neighbors(v) {
                if let Some(root) = self.forest.find(w) {
                    if root != key {
                        children.push(self.entry_of[root]);
                        self.forest.absorb(root, key);
                    }
                }
            }
        }
        let index = self.out.push_nested(sub.graph(), key, group.iter().copied(), children);
        self.entry_of[key] = index;
        index
    }
}

/// Enumerates the top-`k` influential γ-communities from `kc`, which must
/// come from [`count_ic`] on the same prefix. Communities are returned nested
/// and by decreasing influence; fewer than `k` are returned if `kc` has fewer
/// keynodes.
pub fn enum_ic(sub: &PrefixSubgraph<'_>, kc: &KeyCvs, k: usize) -> Result<Communities> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let take = k.min(kc.count());
    if take == 0 {
        return Ok(Communities::new());
    }
    // only the suffix of cvs starting at the take-th keynode from the end
    let first = kc.keys[kc.keys.len() - take];
    let start = kc.cvs.iter().rposition(|&v| v == first).expect("keynode missing from cvs");
    let suffix = &kc.cvs[start..];
    let mut bounds: Vec<usize> = suffix
        .iter()
        .enumerate()
        .filter(|&(_, &v)| kc.is_key(v))
        .map(|(i, _)| i)
        .collect();
    bounds.push(suffix.len());

    let mut en = Enumerator::new();
    for w in bounds.windows(2).rev() {
        let group = &suffix[w[0]..w[1]];
        en.process(sub, group[0], group);
    }
    Ok(en.out)
}
