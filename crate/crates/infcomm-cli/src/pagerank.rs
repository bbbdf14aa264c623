//! PageRank on undirected graphs by power iteration.
//!
//! Every undirected edge counts as two arcs. A vertex without edges spreads
//! its score evenly over all vertices.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PagerankOptions {
    pub damping: f64,
    pub max_iterations: usize,
    /// Stop once the L1 change between rounds drops below this.
    pub tolerance: f64,
}

impl Default for PagerankOptions {
    fn default() -> Self {
        PagerankOptions { damping: 0.85, max_iterations: 100, tolerance: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pagerank {
    pub scores: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Scores of vertices `0..n` over the undirected simple graph on `edges`.
/// Self-loops and repeated edges are ignored.
pub fn pagerank(n: usize, edges: &[(usize, usize)], options: PagerankOptions) -> Pagerank {
    if n == 0 {
        return Pagerank { scores: Vec::new(), iterations: 0, converged: true };
    }
    let mut pairs: Vec<(usize, usize)> = edges
        .iter()
        .filter(|(a, b)| a != b)
        .flat_map(|&(a, b)| [(a, b), (b, a)])
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let mut offsets = vec![0usize; n + 1];
    for &(a, _) in &pairs {
        offsets[a + 1] += 1;
    }
    for v in 0..n {
        offsets[v + 1] += offsets[v];
    }
    let targets: Vec<usize> = pairs.iter().map(|&(_, b)| b).collect();

    let d = options.damping;
    let uniform = 1.0 / n as f64;
    let mut rank = vec![uniform; n];
    let mut next = vec![0.0; n];
    let mut share = vec![0.0; n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < options.max_iterations {
        iterations += 1;
        let mut dangling = 0.0;
        for v in 0..n {
            let deg = offsets[v + 1] - offsets[v];
            if deg == 0 {
                dangling += rank[v];
                share[v] = 0.0;
            } else {
                share[v] = rank[v] / deg as f64;
            }
        }
        let base = (1.0 - d) * uniform + d * dangling * uniform;
        for v in 0..n {
            let incoming: f64 = targets[offsets[v]..offsets[v + 1]].iter().map(|&u| share[u]).sum();
            next[v] = base + d * incoming;
        }
        let change: f64 = rank.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut rank, &mut next);
        if change < options.tolerance {
            converged = true;
            break;
        }
    }
    Pagerank { scores: rank, iterations, converged }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex() {
        let r = pagerank(1, &[], PagerankOptions::default());
        assert_eq!(r.scores, [1.0]);
        assert!(r.converged);
    }

    #[test]
    fn clique_is_uniform() {
        let mut e = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                e.push((a, b));
            }
        }
        let r = pagerank(5, &e, PagerankOptions::default());
        assert!(r.scores.iter().all(|s| (s - 0.2).abs() < 1e-6));
    }

    #[test]
    fn star_closed_form() {
        // center c, leaves l: c = 0.15/5 + 0.85 * 4l and l = 0.15/5 + 0.85 * c/4,
        // giving c = 88/185 and l = 97/740
        let r = pagerank(5, &[(0, 1), (0, 2), (0, 3), (0, 4)], PagerankOptions::default());
        assert!((r.scores[0] - 88.0 / 185.0).abs() < 1e-6);
        for &leaf in &r.scores[1..] {
            assert!((leaf - 97.0 / 740.0).abs() < 1e-6);
        }
    }

    #[test]
    fn dangling_mass_is_kept() {
        let r = pagerank(4, &[(0, 1)], PagerankOptions::default());
        let sum: f64 = r.scores.iter().sum();
        assert!((sum - 1.0).abs() < 1e-9);
        assert!((r.scores[2] - r.scores[3]).abs() < 1e-12);
    }
}
