//! Result containers for enumerated communities.
//!
//! Communities are stored nested: each entry owns its group `gp(u)` and links
//! to child entries whose communities it contains, so a batch of `k` nested
//! communities costs space linear in the subgraph rather than in the sum of
//! their sizes. [`CommunityRef::members`] flattens on demand.

use std::ops::Range;

use crate::graph::{VertexId, WeightedGraph};

#[derive(Debug, Clone)]
struct Entry {
    keynode: VertexId,
    influence: f64,
    group: Range<usize>,
    children: Vec<usize>,
}

/// An ordered collection of communities, by decreasing influence.
#[derive(Debug, Clone, Default)]
pub struct Communities {
    arena: Vec<VertexId>,
    entries: Vec<Entry>,
}

/// Borrowed view of one community in a [`Communities`] collection.
#[derive(Clone, Copy)]
pub struct CommunityRef<'a> {
    set: &'a Communities,
    index: usize,
}

impl Communities {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The community at 0-based position `index` (rank `index + 1`).
    pub fn get(&self, index: usize) -> Option<CommunityRef<'_>> {
        (index < self.entries.len()).then_some(CommunityRef { set: self, index })
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = CommunityRef<'_>> + '_ {
        (0..self.entries.len()).map(move |index| CommunityRef { set: self, index })
    }

    /// `(keynode, sorted members)` pairs, in order; handy for comparisons.
    pub fn to_flat(&self) -> Vec<(VertexId, Vec<VertexId>)> {
        self.iter().map(|c| (c.keynode(), c.members())).collect()
    }

    /// Appends a community with group `group` and the given child entries.
    pub(crate) fn push_nested(
        &mut self,
        graph: &WeightedGraph,
        keynode: VertexId,
        group: impl IntoIterator<Item = VertexId>,
        children: Vec<usize>,
    ) -> usize {
        let start = self.arena.len();
        self.arena.extend(group);
        self.entries.push(Entry {
            keynode,
            influence: graph.weight(keynode),
            group: start..self.arena.len(),
            children,
        });
        self.entries.len() - 1
    }

    pub(crate) fn push_flat(
        &mut self,
        graph: &WeightedGraph,
        keynode: VertexId,
        members: impl IntoIterator<Item = VertexId>,
    ) -> usize {
        self.push_nested(graph, keynode, members, Vec::new())
    }
}

impl<'a> CommunityRef<'a> {
    fn entry(&self) -> &'a Entry {
        &self.set.entries[self.index]
    }

    /// 1-based position in decreasing influence order.
    pub fn rank(&self) -> usize {
        self.index + 1
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Minimum-weight member; its weight rank disambiguates equal influences.
    pub fn keynode(&self) -> VertexId {
        self.entry().keynode
    }

    pub fn influence(&self) -> f64 {
        self.entry().influence
    }

    /// Vertices owned directly by this community (`gp(u)`).
    pub fn group(&self) -> &'a [VertexId] {
        &self.set.arena[self.entry().group.clone()]
    }

    pub fn children(&self) -> impl Iterator<Item = CommunityRef<'a>> + 'a {
        let set = self.set;
        self.entry().children.iter().map(move |&index| CommunityRef { set, index })
    }

    /// Flattened member set, ascending by vertex id.
    pub fn members(&self) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = vec![self.index];
        while let Some(i) = stack.pop() {
            let entry = &self.set.entries[i];
            out.extend_from_slice(&self.set.arena[entry.group.clone()]);
            stack.extend(entry.children.iter().copied());
        }
        out.sort_unstable();
        out
    }
}

impl std::fmt::Debug for CommunityRef<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Community")
            .field("rank", &self.rank())
            .field("keynode", &self.keynode())
            .field("influence", &self.influence())
            .field("group", &self.group())
            .field("children", &self.entry().children)
            .finish()
    }
}
