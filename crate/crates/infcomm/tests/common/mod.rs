#![allow(dead_code)]

use std::collections::VecDeque;

use infcomm::{Communities, VertexId, WeightedGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Distinct weights 1..=n in random order.
pub fn shuffled_weights(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut w: Vec<f64> = (1..=n).map(|x| x as f64).collect();
    w.shuffle(rng);
    w
}

pub fn erdos(n: usize, p: f64, seed: u64) -> WeightedGraph {
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    let w = shuffled_weights(n, &mut rng);
    WeightedGraph::from_indexed(&w, &edges).unwrap().0
}

/// Preferential attachment: each new vertex links to `m` endpoints sampled
/// from the running edge-endpoint list.
pub fn powerlaw(n: usize, m: usize, seed: u64) -> WeightedGraph {
    let mut rng = rng(seed);
    let mut ends: Vec<usize> = Vec::new();
    let mut edges = Vec::new();
    for v in 1..n {
        for _ in 0..m.min(v) {
            let u = if ends.is_empty() { 0 } else { ends[rng.random_range(0..ends.len())] };
            edges.push((u, v));
            ends.push(u);
            ends.push(v);
        }
    }
    let w = shuffled_weights(n, &mut rng);
    WeightedGraph::from_indexed(&w, &edges).unwrap().0
}

/// Degree of each member inside the subgraph induced by `members`.
fn induced_degrees(g: &WeightedGraph, members: &[VertexId]) -> Vec<usize> {
    members
        .iter()
        .map(|&v| {
            g.higher(v)
                .iter()
                .chain(g.lower(v))
                .filter(|w| members.binary_search(w).is_ok())
                .count()
        })
        .collect()
}

pub fn is_connected(g: &WeightedGraph, members: &[VertexId]) -> bool {
    let Some(&start) = members.first() else { return false };
    let mut seen = vec![false; members.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([start]);
    let mut reached = 1;
    while let Some(v) = queue.pop_front() {
        for &w in g.higher(v).iter().chain(g.lower(v)) {
            if let Ok(i) = members.binary_search(&w) {
                if !seen[i] {
                    seen[i] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
    }
    reached == members.len()
}

/// Connected, minimum induced degree at least γ, keynode is the lightest.
pub fn validate_core_community(g: &WeightedGraph, gamma: usize, key: VertexId, members: &[VertexId]) {
    assert!(members.windows(2).all(|w| w[0] < w[1]), "members sorted and distinct");
    assert_eq!(members.last(), Some(&key), "keynode is the minimum-weight member");
    assert!(is_connected(g, members));
    assert!(induced_degrees(g, members).iter().all(|&d| d >= gamma));
}

/// Pairwise disjoint or strictly nested.
pub fn assert_laminar(flat: &[(VertexId, Vec<VertexId>)]) {
    for (i, (_, a)) in flat.iter().enumerate() {
        for (_, b) in &flat[i + 1..] {
            let common = a.iter().filter(|v| b.binary_search(v).is_ok()).count();
            assert!(
                common == 0 || (common == a.len()) != (common == b.len()),
                "communities overlap without nesting: {a:?} {b:?}"
            );
        }
    }
}

pub fn flat(cs: &Communities) -> Vec<(VertexId, Vec<VertexId>)> {
    cs.to_flat()
}
