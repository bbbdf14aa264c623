//! Disjoint-set forest mapping vertices to the lightest keynode whose
//! community currently contains them (`v2key`).
//!
//! Unlike a textbook union-find there is no rank: a union always makes the
//! keynode being processed the new root, so `find` answers with the lightest
//! absorbing keynode. Path halving keeps finds near constant amortized.

use crate::graph::VertexId;

const UNSET: usize = usize::MAX;

#[derive(Debug, Clone, Default)]
pub struct KeyForest {
    parent: Vec<usize>,
}

impl KeyForest {
    pub fn new() -> Self {
        Self::default()
    }

    /// Lazily extends the forest so ids below `len` are addressable.
    pub fn reserve_prefix(&mut self, len: usize) {
        if self.parent.len() < len {
            self.parent.resize(len, UNSET);
        }
    }

    pub fn is_assigned(&self, v: VertexId) -> bool {
        self.parent.get(v).is_some_and(|&p| p != UNSET)
    }

    /// `v2key(v) <- key`; `key` must itself be a root (or `v == key`).
    pub fn assign(&mut self, v: VertexId, key: VertexId) {
        self.reserve_prefix(v.max(key) + 1);
        self.parent[v] = key;
    }

    /// Current representative keynode of `v`, or `None` if unassigned.
    pub fn find(&mut self, v: VertexId) -> Option<VertexId> {
        if !self.is_assigned(v) {
            return None;
        }
        let mut x = v;
        while self.parent[x] != x {
            let grand = self.parent[self.parent[x]];
            self.parent[x] = grand;
            x = grand;
        }
        Some(x)
    }

    /// Makes `key` the representative of the set rooted at `root`.
    pub fn absorb(&mut self, root: VertexId, key: VertexId) {
        debug_assert_eq!(self.parent[root], root);
        self.parent[root] = key;
    }
}
