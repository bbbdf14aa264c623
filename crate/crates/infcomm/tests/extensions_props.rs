mod common;

use std::collections::BTreeSet;

use common::{erdos, flat, powerlaw, rng};
use infcomm::baselines::{oracle_enumerate, DEFAULT_ORACLE_MAX};
use infcomm::extensions::{
    count_ic_noncontainment, count_icc_truss, enum_icc_truss, filter_noncontainment, global_truss,
    local_search_noncontainment, local_search_truss, truss_oracle,
};
use infcomm::{local_search, PrefixSubgraph, QueryParams, VertexId, WeightedGraph};
use proptest::prelude::*;
use rand::Rng;

fn small_graph() -> impl Strategy<Value = WeightedGraph> {
    (1usize..=12, any::<u64>(), prop::sample::select(vec![0.3, 0.5, 0.8]))
        .prop_map(|(n, seed, p)| erdos(n, p, seed))
}

fn truss_all(g: &WeightedGraph, len: usize, gamma: usize) -> Vec<(VertexId, Vec<VertexId>)> {
    let sub = PrefixSubgraph::with_len(g, len);
    let ekc = count_icc_truss(&sub, gamma).unwrap();
    flat(&enum_icc_truss(&sub, &ekc, ekc.count().max(1)).unwrap())
}

/// The γ-truss of the subgraph induced by `members` still touches every
/// member and is connected. Induced edges outside the community's edge set
/// may have low support, so those are peeled first.
fn validate_truss_community(g: &WeightedGraph, gamma: usize, members: &[VertexId]) {
    let mut adj: Vec<BTreeSet<usize>> = members
        .iter()
        .map(|&v| {
            g.higher(v)
                .iter()
                .chain(g.lower(v))
                .filter_map(|w| members.binary_search(w).ok())
                .collect()
        })
        .collect();
    loop {
        let mut weak = Vec::new();
        for a in 0..adj.len() {
            for &b in adj[a].range(..a) {
                if adj[a].intersection(&adj[b]).count() < gamma - 2 {
                    weak.push((a, b));
                }
            }
        }
        if weak.is_empty() {
            break;
        }
        for (a, b) in weak {
            adj[a].remove(&b);
            adj[b].remove(&a);
        }
    }
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(a) = stack.pop() {
        for &b in &adj[a] {
            if !seen[b] {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    assert!(seen.iter().all(|&s| s), "truss community not spanned by its truss: {members:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn noncontainment_matches_filtered_oracle(g in small_graph(), gamma in 1usize..=3) {
        let nc = count_ic_noncontainment(&mut PrefixSubgraph::full(&g), gamma).unwrap();
        let found = flat(&nc.communities(&g, usize::MAX));
        let oracle = oracle_enumerate(&g, gamma, DEFAULT_ORACLE_MAX).unwrap();
        prop_assert_eq!(&found, &flat(&filter_noncontainment(&g, &oracle)));
        let mut seen = BTreeSet::new();
        for (_, members) in &found {
            for v in members {
                prop_assert!(seen.insert(*v), "flagged communities overlap");
            }
        }
    }

    #[test]
    fn truss_matches_oracle(g in small_graph(), gamma in 2usize..=5) {
        let found = truss_all(&g, g.vertex_count(), gamma);
        prop_assert_eq!(&found, &flat(&truss_oracle(&g, gamma, DEFAULT_ORACLE_MAX).unwrap()));
        for (_, members) in &found {
            validate_truss_community(&g, gamma, members);
        }
    }

    #[test]
    fn truss_inside_core_community(g in small_graph(), gamma in 3usize..=4) {
        let cores = flat(&oracle_enumerate(&g, gamma - 1, DEFAULT_ORACLE_MAX).unwrap());
        for (key, members) in truss_all(&g, g.vertex_count(), gamma) {
            let (_, core) = cores.iter().find(|(k, _)| *k == key).expect("core community with the same influence");
            prop_assert!(members.iter().all(|v| core.binary_search(v).is_ok()));
        }
    }

    #[test]
    fn truss_count_monotone_in_gamma(g in small_graph()) {
        let sub = PrefixSubgraph::full(&g);
        let counts: Vec<usize> = (2..=6).map(|gamma| count_icc_truss(&sub, gamma).unwrap().count()).collect();
        prop_assert!(counts.windows(2).all(|w| w[0] >= w[1]), "{:?}", counts);
    }

    #[test]
    fn truss_prefix_properties(g in small_graph(), gamma in 3usize..=4, a in 0usize..=12, b in 0usize..=12) {
        let n = g.vertex_count();
        let (short, long) = (a.min(b).min(n), a.max(b).min(n));
        let small = truss_all(&g, short, gamma);
        let large = truss_all(&g, long, gamma);
        for c in &small {
            prop_assert!(large.contains(c));
        }
        for c in large.iter().filter(|(key, _)| *key < short) {
            prop_assert!(small.contains(c));
        }
    }
}

#[test]
fn local_variants_match_global_runs() {
    let mut r = rng(9);
    for i in 0..30 {
        let n = r.random_range(20..=500);
        let g = if i % 2 == 0 { erdos(n, r.random_range(0.02..0.15), r.random()) } else { powerlaw(n, 5, r.random()) };
        for gamma in [3, 4] {
            for k in [1, 3, 10] {
                let local = local_search_truss(&g, QueryParams::new(gamma, k)).unwrap();
                assert_eq!(flat(&local.communities), flat(&global_truss(&g, gamma, k).unwrap()));

                let nc = local_search_noncontainment(&g, QueryParams::new(gamma, k)).unwrap();
                let global = count_ic_noncontainment(&mut PrefixSubgraph::full(&g), gamma).unwrap();
                assert_eq!(flat(&nc.communities), flat(&global.communities(&g, k)));

                let plain = local_search(&g, QueryParams::new(gamma, k)).unwrap();
                assert!(nc.trace.accessed_size() >= plain.trace.accessed_size());
            }
        }
    }
}
