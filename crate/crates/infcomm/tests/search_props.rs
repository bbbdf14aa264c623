mod common;

use std::ops::ControlFlow;
use std::sync::atomic::AtomicBool;

use common::{erdos, flat, powerlaw, rng};
use infcomm::baselines::{forward, online_all};
use infcomm::peel::{count_ic, enum_ic};
use infcomm::search::{local_search_progressive, ProgressiveOptions};
use infcomm::{local_search, KeyCvs, PrefixSubgraph, QueryParams, VertexId, WeightedGraph};
use proptest::prelude::*;
use rand::Rng;

/// Shortest prefix holding at least `k` communities, by binary search on
/// the monotone count.
fn tau_star_len(g: &WeightedGraph, gamma: usize, k: usize) -> Option<usize> {
    let count = |len| count_ic(&mut PrefixSubgraph::with_len(g, len), gamma).unwrap().count();
    if count(g.vertex_count()) < k {
        return None;
    }
    let (mut lo, mut hi) = (0, g.vertex_count());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if count(mid) >= k {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(lo)
}

type Emitted = Vec<(VertexId, Vec<VertexId>)>;

fn progressive_all(g: &WeightedGraph, gamma: usize, delta: f64) -> (Emitted, infcomm::search::ProgressiveOutcome) {
    let mut emitted = Vec::new();
    let mut sink = |c: infcomm::CommunityRef<'_>| {
        emitted.push((c.keynode(), c.members()));
        ControlFlow::Continue(())
    };
    let stop = AtomicBool::new(false);
    let options = ProgressiveOptions { delta, record_fragments: true };
    let out = local_search_progressive(g, gamma, options, &mut sink, &stop).unwrap();
    (emitted, out)
}

fn check_instance(g: &WeightedGraph, gamma: usize, k: usize) {
    let local = local_search(g, QueryParams::new(gamma, k)).unwrap();
    let all = online_all(g, gamma, k).unwrap();
    let fwd = forward(g, gamma, k).unwrap();
    assert_eq!(flat(&local.communities), flat(&all.communities));
    assert_eq!(flat(&local.communities), flat(&fwd.communities));
    assert_eq!(local.fewer_than_k, all.total < k);

    let its = &local.trace.iterations;
    for pair in its.windows(2) {
        assert!(pair[1].size > pair[0].size);
        if pair[1].prefix_len < g.vertex_count() {
            assert!(pair[1].size as f64 >= 2.0 * pair[0].size as f64);
        }
    }
    if let Some(len) = tau_star_len(g, gamma, k) {
        let star = g.prefix_size(len);
        assert!(local.trace.accessed_size() < 4 * star, "accessed {} vs τ* size {star}", local.trace.accessed_size());
    }
}

#[test]
fn local_matches_baselines_on_random_graphs() {
    let mut r = rng(42);
    for i in 0..40 {
        let n = r.random_range(20..=400);
        let g = if i % 2 == 0 {
            erdos(n, r.random_range(0.02..0.2), r.random())
        } else {
            powerlaw(n, r.random_range(2..=8), r.random())
        };
        for gamma in [1, 3, 5] {
            for k in [1, 5, 10, 50] {
                check_instance(&g, gamma, k);
            }
        }
    }
}

#[test]
fn progressive_suffix_and_windows() {
    let mut r = rng(5);
    for i in 0..30 {
        let n = r.random_range(10..=300);
        let g = if i % 2 == 0 { erdos(n, 0.08, r.random()) } else { powerlaw(n, 4, r.random()) };
        for gamma in [2, 3] {
            let (emitted, out) = progressive_all(&g, gamma, 2.0);
            assert!(!out.stopped);

            let last = out.trace.iterations.last().unwrap();
            let mut sub = PrefixSubgraph::with_len(&g, last.prefix_len);
            let whole = count_ic(&mut sub, gamma).unwrap();
            let fragments: Vec<&KeyCvs> = out.trace.fragments.iter().rev().collect();
            let joined = KeyCvs::concat(&fragments);
            assert_eq!(joined.keys(), whole.keys());
            assert_eq!(joined.cvs(), whole.cvs());

            // strictly decreasing influence, then equal to the full batch
            assert!(emitted.windows(2).all(|w| g.weight(w[0].0) > g.weight(w[1].0)));
            let batch = flat(&enum_ic(&sub, &whole, whole.count().max(1)).unwrap());
            assert_eq!(emitted, batch);

            let mut start = 0;
            let mut previous_len = 0;
            for it in &out.trace.iterations {
                for (key, _) in &emitted[start..start + it.count] {
                    assert!((previous_len..it.prefix_len).contains(key));
                }
                start += it.count;
                previous_len = it.prefix_len;
            }
            assert_eq!(start, emitted.len());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn progressive_prefix_equals_batch(n in 5usize..120, seed: u64, gamma in 1usize..4, k in 1usize..12) {
        let g = erdos(n, 0.15, seed);
        let (emitted, _) = progressive_all(&g, gamma, 2.0);
        let batch = local_search(&g, QueryParams::new(gamma, k)).unwrap();
        prop_assert_eq!(&emitted[..k.min(emitted.len())], &flat(&batch.communities)[..]);
    }

    #[test]
    fn delta_does_not_change_results(n in 5usize..120, seed: u64, gamma in 1usize..4, k in 1usize..12) {
        let g = powerlaw(n, 3, seed);
        let reference = flat(&local_search(&g, QueryParams::new(gamma, k)).unwrap().communities);
        for delta in [1.5, 4.0, 16.0, 64.0] {
            let r = local_search(&g, QueryParams::new(gamma, k).with_delta(delta)).unwrap();
            prop_assert_eq!(&flat(&r.communities), &reference);
        }
    }

    #[test]
    fn progressive_limit_stops_early(n in 5usize..80, seed: u64, limit in 1usize..4) {
        let g = erdos(n, 0.3, seed);
        let mut seen = 0;
        let mut sink = |_: infcomm::CommunityRef<'_>| {
            seen += 1;
            if seen == limit { ControlFlow::Break(()) } else { ControlFlow::Continue(()) }
        };
        let out = local_search_progressive(&g, 2, ProgressiveOptions::default(), &mut sink, &AtomicBool::new(false)).unwrap();
        let total = count_ic(&mut PrefixSubgraph::full(&g), 2).unwrap().count();
        prop_assert_eq!(out.communities.len(), limit.min(total));
        prop_assert_eq!(out.stopped, total >= limit);
    }
}
