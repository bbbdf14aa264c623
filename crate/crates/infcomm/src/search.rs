//! Local search over exponentially growing prefix subgraphs.
//!
//! The top-k communities of `G` are the top-k communities of the smallest
//! prefix `G≥τ*` that contains at least `k` of them. The driver counts
//! communities on prefixes whose size grows by a factor `delta` each round
//! until the count reaches `k` (or the whole graph is reached), then
//! enumerates on the last prefix. Total work is linear in `size(G≥τ*)`.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use crate::community::{Communities, CommunityRef};
use crate::error::{Error, Result};
use crate::graph::{PrefixSubgraph, WeightedGraph};
use crate::peel::{self, Enumerator, KeyCvs};

pub const DEFAULT_DELTA: f64 = 2.0;

/// Query parameters for a top-k search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueryParams {
    pub gamma: usize,
    pub k: usize,
    pub delta: f64,
}

impl QueryParams {
    pub fn new(gamma: usize, k: usize) -> Self {
        QueryParams { gamma, k, delta: DEFAULT_DELTA }
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.gamma == 0 {
            return Err(Error::InvalidGamma { got: 0, min: 1 });
        }
        if self.k == 0 {
            return Err(Error::InvalidK);
        }
        validate_delta(self.delta)
    }
}

pub(crate) fn validate_delta(delta: f64) -> Result<()> {
    if !(delta.is_finite() && delta > 1.0) {
        return Err(Error::InvalidDelta(delta));
    }
    Ok(())
}

/// One counting round of a search.
#[derive(Debug, Clone, PartialEq)]
pub struct Iteration {
    /// Vertices in the prefix.
    pub prefix_len: usize,
    /// Weight of the lightest included vertex.
    pub tau: f64,
    /// `size(G≥τ)`.
    pub size: usize,
    /// Communities counted (batch) or emitted (progressive) this round.
    pub count: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Default)]
pub struct SearchTrace {
    pub iterations: Vec<Iteration>,
    pub enumerate_elapsed: Duration,
    /// ConstructCVS output per round, recorded only on request.
    pub fragments: Vec<KeyCvs>,
}

impl SearchTrace {
    /// `size(G≥τh)`, the largest subgraph the search touched.
    pub fn accessed_size(&self) -> usize {
        self.iterations.last().map_or(0, |it| it.size)
    }

    pub fn rounds(&self) -> usize {
        self.iterations.len()
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub communities: Communities,
    pub trace: SearchTrace,
    /// The graph holds fewer than `k` communities; all of them are returned.
    pub fewer_than_k: bool,
}

/// Counting and enumeration procedures for one cohesiveness measure.
///
/// Implementations must satisfy the two prefix properties: communities of a
/// smaller prefix stay communities of a larger one, and communities of a
/// larger prefix whose influence lies inside a smaller prefix are
/// communities there too.
pub trait CommunityModel {
    type Peeling;

    /// Smallest cohesive parameter accepted.
    fn min_gamma(&self) -> usize {
        1
    }

    /// Heuristic first prefix length: enough vertices for `k` communities.
    fn initial_len(&self, graph: &WeightedGraph, gamma: usize, k: usize) -> usize {
        k.saturating_add(gamma).min(graph.vertex_count())
    }

    fn count(&self, sub: &mut PrefixSubgraph<'_>, gamma: usize) -> Result<Self::Peeling>;

    fn total(&self, peeling: &Self::Peeling) -> usize;

    fn enumerate(&self, sub: &PrefixSubgraph<'_>, peeling: &Self::Peeling, k: usize) -> Result<Communities>;
}

/// Minimum-degree cohesiveness (influential γ-communities).
#[derive(Debug, Clone, Copy, Default)]
pub struct CoreModel;

impl CommunityModel for CoreModel {
    type Peeling = KeyCvs;

    fn count(&self, sub: &mut PrefixSubgraph<'_>, gamma: usize) -> Result<KeyCvs> {
        peel::count_ic(sub, gamma)
    }

    fn total(&self, peeling: &KeyCvs) -> usize {
        peeling.count()
    }

    fn enumerate(&self, sub: &PrefixSubgraph<'_>, peeling: &KeyCvs, k: usize) -> Result<Communities> {
        peel::enum_ic(sub, peeling, k)
    }
}

/// `(k + γ)`-th largest vertex weight, or the minimum weight if `k + γ > n`.
pub fn initial_tau(graph: &WeightedGraph, gamma: usize, k: usize) -> Option<f64> {
    let len = CoreModel.initial_len(graph, gamma, k);
    len.checked_sub(1).map(|v| graph.weight(v))
}

fn next_target(size: usize, delta: f64) -> usize {
    let target = (delta * size as f64).ceil();
    if target >= usize::MAX as f64 {
        usize::MAX
    } else {
        (target as usize).max(size + 1)
    }
}

/// Generic local search driver for any [`CommunityModel`].
pub fn local_search_with<M: CommunityModel>(graph: &WeightedGraph, params: QueryParams, model: &M) -> Result<SearchResult> {
    params.validate()?;
    if params.gamma < model.min_gamma() {
        return Err(Error::InvalidGamma { got: params.gamma, min: model.min_gamma() });
    }
    let mut trace = SearchTrace::default();
    if graph.vertex_count() == 0 {
        return Ok(SearchResult { communities: Communities::new(), trace, fewer_than_k: true });
    }
    let mut sub = PrefixSubgraph::with_len(graph, model.initial_len(graph, params.gamma, params.k));
    let peeling = loop {
        let started = Instant::now();
        let peeling = model.count(&mut sub, params.gamma)?;
        let count = model.total(&peeling);
        trace.iterations.push(Iteration {
            prefix_len: sub.len(),
            tau: sub.tau().unwrap_or(f64::NAN),
            size: sub.size(),
            count,
            elapsed: started.elapsed(),
        });
        if count >= params.k || sub.is_full() {
            break peeling;
        }
        sub.grow_to_size(next_target(sub.size(), params.delta));
    };
    let started = Instant::now();
    let communities = model.enumerate(&sub, &peeling, params.k)?;
    trace.enumerate_elapsed = started.elapsed();
    let fewer_than_k = model.total(&peeling) < params.k;
    Ok(SearchResult { communities, trace, fewer_than_k })
}

/// Top-k influential γ-communities by local search.
pub fn local_search(graph: &WeightedGraph, params: QueryParams) -> Result<SearchResult> {
    local_search_with(graph, params, &CoreModel)
}

/// Receives communities as the progressive search discovers them.
pub trait CommunitySink {
    fn accept(&mut self, community: CommunityRef<'_>) -> ControlFlow<()>;
}

impl<F> CommunitySink for F
where
    F: FnMut(CommunityRef<'_>) -> ControlFlow<()>,
{
    fn accept(&mut self, community: CommunityRef<'_>) -> ControlFlow<()> {
        self(community)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProgressiveOptions {
    pub delta: f64,
    pub record_fragments: bool,
}

impl Default for ProgressiveOptions {
    fn default() -> Self {
        ProgressiveOptions { delta: DEFAULT_DELTA, record_fragments: false }
    }
}

#[derive(Debug, Clone)]
pub struct ProgressiveOutcome {
    pub trace: SearchTrace,
    /// Every emitted community, nested, in emission order.
    pub communities: Communities,
    /// Set when the sink or the stop flag ended the run early.
    pub stopped: bool,
}

/// Reports influential γ-communities in decreasing influence order without a
/// fixed `k`.
///
/// Each round peels its prefix only down to the previous prefix, so the new
/// keynodes are exactly those of communities not present before, and
/// enumerates them against a disjoint-set forest shared across rounds. The
/// run ends when the whole graph has been processed, when the sink breaks,
/// or when `stop` is set (checked between emissions and between rounds).
pub fn local_search_progressive<S: CommunitySink>(
    graph: &WeightedGraph,
    gamma: usize,
    options: ProgressiveOptions,
    sink: &mut S,
    stop: &AtomicBool,
) -> Result<ProgressiveOutcome> {
    if gamma == 0 {
        return Err(Error::InvalidGamma { got: 0, min: 1 });
    }
    validate_delta(options.delta)?;
    let mut trace = SearchTrace::default();
    let mut en = Enumerator::new();
    let mut stopped = false;
    let n = graph.vertex_count();
    if n == 0 {
        return Ok(ProgressiveOutcome { trace, communities: en.out, stopped });
    }

    // a γ-community needs at least γ + 1 vertices
    let mut sub = PrefixSubgraph::with_len(graph, gamma.saturating_add(1).min(n));
    let mut previous_len = 0;
    'rounds: loop {
        if stop.load(Ordering::Relaxed) {
            stopped = true;
            break;
        }
        let started = Instant::now();
        let fragment = peel::construct_cvs(&mut sub, gamma, previous_len)?;
        let groups: Vec<(usize, &[usize])> = fragment.groups().collect();
        let mut emitted = 0;
        for &(key, group) in groups.iter().rev() {
            let index = en.process(&sub, key, group);
            emitted += 1;
            let flow = sink.accept(en.out.get(index).expect("just pushed"));
            if flow.is_break() || stop.load(Ordering::Relaxed) {
                stopped = true;
            }
            if stopped {
                break;
            }
        }
        trace.iterations.push(Iteration {
            prefix_len: sub.len(),
            tau: sub.tau().unwrap_or(f64::NAN),
            size: sub.size(),
            count: emitted,
            elapsed: started.elapsed(),
        });
        if options.record_fragments {
            trace.fragments.push(fragment);
        }
        if stopped || sub.is_full() {
            break 'rounds;
        }
        previous_len = sub.len();
        sub.grow_to_size(next_target(sub.size(), options.delta));
    }
    Ok(ProgressiveOutcome { trace, communities: en.out, stopped })
}
