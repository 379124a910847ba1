#![allow(dead_code)]

use hyperlocal::{Hypergraph, NodeSet, SplittingSpec};
use rand::seq::index::sample;
use rand::Rng;

/// A small random instance: hypergraph, reference set and eps.
pub struct Instance {
    pub h: Hypergraph,
    pub r: NodeSet,
    pub eps: f64,
    pub delta: f64,
}

/// Random hypergraph with `n <= max_n` nodes, at most `max_e` edges of size
/// 2 to 5, and delta-linear splitting with delta in {1, 2}. Every node is
/// covered by at least one edge.
pub fn random_hypergraph<R: Rng>(rng: &mut R, max_n: usize, max_e: usize) -> (Hypergraph, f64) {
    loop {
        let n = rng.gen_range(3..=max_n);
        let m = rng.gen_range(1..=max_e);
        let delta = if rng.gen_bool(0.5) { 1.0 } else { 2.0 };
        let edges: Vec<Vec<usize>> = (0..m)
            .map(|_| {
                let k = rng.gen_range(2..=5.min(n));
                sample(rng, n, k).into_vec()
            })
            .collect();
        let h = Hypergraph::with_spec(n, edges, SplittingSpec::delta_linear(delta)).unwrap();
        if (0..n).all(|v| !h.is_isolated(v)) {
            return (h, delta);
        }
    }
}

/// Random instance where `vol(R) <= vol(R̄)` and eps is either eps0 or 1.
pub fn random_instance<R: Rng>(rng: &mut R) -> Instance {
    loop {
        let (h, delta) = random_hypergraph(rng, 12, 15);
        let n = h.num_nodes();
        let size = rng.gen_range(1..=n / 2);
        let r: NodeSet = sample(rng, n, size).into_iter().collect();
        let eps0 = h.min_locality(&r);
        if eps0 > 1.0 {
            continue;
        }
        let eps = if rng.gen_bool(0.5) { eps0 } else { 1.0 };
        return Instance { h, r, eps, delta };
    }
}

/// Edmonds-Karp on a dense capacity matrix.
pub fn edmonds_karp(cap: &[Vec<f64>], s: usize, t: usize) -> f64 {
    let n = cap.len();
    let mut res = cap.to_vec();
    let mut total = 0.0;
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if prev[v] == usize::MAX && res[u][v] > 0.0 {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[t] == usize::MAX {
            return total;
        }
        let mut bottleneck = f64::INFINITY;
        let mut v = t;
        while v != s {
            bottleneck = bottleneck.min(res[prev[v]][v]);
            v = prev[v];
        }
        let mut v = t;
        while v != s {
            res[prev[v]][v] -= bottleneck;
            res[v][prev[v]] += bottleneck;
            v = prev[v];
        }
        total += bottleneck;
    }
}
