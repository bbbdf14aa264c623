//! Seeded synthetic graphs: Erdős–Rényi and preferential attachment.

use std::fmt;
use std::str::FromStr;

use infcomm::WeightedGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::pagerank::{pagerank, PagerankOptions};

/// Generator specification, written `erdos(n,p,seed)` or
/// `powerlaw(n,m_per_vertex,seed)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphSpec {
    Erdos { n: usize, p: f64, seed: u64 },
    Powerlaw { n: usize, m: usize, seed: u64 },
}

impl GraphSpec {
    pub fn seed(&self) -> u64 {
        match *self {
            GraphSpec::Erdos { seed, .. } | GraphSpec::Powerlaw { seed, .. } => seed,
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        match self {
            GraphSpec::Erdos { n, p, .. } => GraphSpec::Erdos { n, p, seed },
            GraphSpec::Powerlaw { n, m, .. } => GraphSpec::Powerlaw { n, m, seed },
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            GraphSpec::Erdos { n, .. } | GraphSpec::Powerlaw { n, .. } => n,
        }
    }

    /// Edges over vertices `0..n`. Preferential attachment may repeat an
    /// edge; ingestion drops the repeats.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match *self {
            GraphSpec::Erdos { n, p, seed } => erdos(n, p, seed),
            GraphSpec::Powerlaw { n, m, seed } => powerlaw(n, m, seed),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Erdos { n, p, seed } => write!(f, "erdos({n},{p},{seed})"),
            GraphSpec::Powerlaw { n, m, seed } => write!(f, "powerlaw({n},{m},{seed})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad graph spec `{0}`: expected erdos(n,p,seed) or powerlaw(n,m,seed)")]
pub struct SpecError(String);

impl FromStr for GraphSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let bad = || SpecError(s.to_string());
        let (name, rest) = s.trim().split_once('(').ok_or_else(bad)?;
        let args: Vec<&str> = rest.strip_suffix(')').ok_or_else(bad)?.split(',').map(str::trim).collect();
        let [a, b, c] = args[..] else { return Err(bad()) };
        let n: usize = a.parse().map_err(|_| bad())?;
        let seed: u64 = c.parse().map_err(|_| bad())?;
        match name.trim() {
            "erdos" => {
                let p: f64 = b.parse().map_err(|_| bad())?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(bad());
                }
                Ok(GraphSpec::Erdos { n, p, seed })
            }
            "powerlaw" => Ok(GraphSpec::Powerlaw { n, m: b.parse().map_err(|_| bad())?, seed }),
            _ => Err(bad()),
        }
    }
}

/// G(n, p) by geometric skipping over the pairs `a < b`, so the cost is
/// proportional to the number of edges.
pub fn erdos(n: usize, p: f64, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    if p <= 0.0 || n < 2 {
        return edges;
    }
    if p >= 1.0 {
        for b in 1..n {
            edges.extend((0..b).map(|a| (a, b)));
        }
        return edges;
    }
    let log_q = (1.0 - p).ln();
    let (mut a, mut b) = (usize::MAX, 1usize);
    loop {
        let r: f64 = rng.random();
        let skip = ((1.0 - r).ln() / log_q).floor() as usize;
        a = a.wrapping_add(1).saturating_add(skip);
        while b < n && a >= b {
            a -= b;
            b += 1;
        }
        if b >= n {
            return edges;
        }
        edges.push((a, b));
    }
}

/// Preferential attachment: vertex `v` picks `min(m, v)` targets, each drawn
/// from the list of all earlier edge endpoints, so hubs attract links in
/// proportion to their degree. Vertex 1 attaches to vertex 0.
pub fn powerlaw(n: usize, m: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n.saturating_mul(m));
    let mut ends: Vec<usize> = Vec::with_capacity(2 * n.saturating_mul(m));
    for v in 1..n {
        for _ in 0..m.min(v) {
            let u = if ends.is_empty() { 0 } else { ends[rng.random_range(0..ends.len())] };
            edges.push((u, v));
            ends.push(u);
            ends.push(v);
        }
    }
    edges
}

/// The generated graph with default PageRank scores as vertex weights.
/// Vertex labels are the generator's indices.
pub fn weighted_graph(spec: &GraphSpec) -> WeightedGraph {
    let n = spec.vertex_count();
    let edges = spec.edges();
    let scores = pagerank(n, &edges, PagerankOptions::default()).scores;
    WeightedGraph::from_indexed(&scores, &edges).expect("generated endpoints are in range").0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let s: GraphSpec = "powerlaw(1000, 5, 7)".parse().unwrap();
        assert_eq!(s, GraphSpec::Powerlaw { n: 1000, m: 5, seed: 7 });
        assert_eq!(s.to_string(), "powerlaw(1000,5,7)");
        let e: GraphSpec = "erdos(10,0.5,1)".parse().unwrap();
        assert_eq!(e.to_string().parse::<GraphSpec>().unwrap(), e);
        for bad in ["erdos(10,1.5,1)", "ring(3,1,1)", "erdos(10,0.5)", "powerlaw(1,2,x)", "erdos"] {
            assert!(bad.parse::<GraphSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn erdos_is_simple_and_seeded() {
        let e = erdos(200, 0.05, 3);
        assert_eq!(e, erdos(200, 0.05, 3));
        assert_ne!(e, erdos(200, 0.05, 4));
        assert!(e.iter().all(|&(a, b)| a < b && b < 200));
        let mut sorted = e.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), e.len());
        // expected 995 edges; five standard deviations is about 150
        assert!((845..1145).contains(&e.len()), "{}", e.len());
        assert_eq!(erdos(6, 1.0, 0).len(), 15);
        assert!(erdos(6, 0.0, 0).is_empty());
    }

    #[test]
    fn powerlaw_degrees() {
        let e = powerlaw(500, 3, 1);
        assert_eq!(e.len(), 1 + 2 + 3 * 497);
        let mut deg = vec![0; 500];
        for &(a, b) in &e {
            deg[a] += 1;
            deg[b] += 1;
        }
        assert!(deg.iter().all(|&d| d >= 1));
        assert!(*deg.iter().max().unwrap() > 30);
    }
}
