//! Comparison methods: neighborhood rankings around a seed set, and clique
//! expansion followed by graph local conductance minimization.

use crate::cluster::{minimize_hlc, ClusterReport};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::nodeset::NodeSet;
use crate::splitting::CardinalitySplitting;
use std::collections::{BTreeMap, HashMap, HashSet};

/// For every non-seed neighbor of `seeds`: how many of its incident edges
/// contain at least one seed.
fn seed_touch_counts(h: &Hypergraph, seeds: &NodeSet) -> HashMap<usize, usize> {
    let seed_edges: HashSet<usize> = seeds
        .iter()
        .flat_map(|v| h.incident(v).iter().copied())
        .collect();
    let mut counts = HashMap::new();
    for &e in &seed_edges {
        for &v in h.edge(e) {
            if !seeds.contains(v) {
                *counts.entry(v).or_insert(0usize) += 1;
            }
        }
    }
    counts
}

fn ranked<F>(h: &Hypergraph, seeds: &NodeSet, k: usize, score: F) -> Vec<(usize, f64)>
where
    F: Fn(usize, usize) -> f64,
{
    let mut scored: Vec<(f64, usize)> = seed_touch_counts(h, seeds)
        .into_iter()
        .map(|(v, c)| (score(v, c), v))
        .collect();
    // higher score first, then smaller id
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    scored.into_iter().take(k).map(|(s, v)| (v, s)).collect()
}

/// Top `k` neighbors of the seeds by number of incident edges shared with
/// the seed set. Seeds themselves are never returned.
pub fn top_neighbors(h: &Hypergraph, seeds: &NodeSet, k: usize) -> Vec<usize> {
    top_neighbors_scored(h, seeds, k).into_iter().map(|(v, _)| v).collect()
}

/// [`top_neighbors`] with each node's score.
pub fn top_neighbors_scored(h: &Hypergraph, seeds: &NodeSet, k: usize) -> Vec<(usize, f64)> {
    ranked(h, seeds, k, |_, c| c as f64)
}

/// Top `k` neighbors of the seeds by the fraction of their incident edges
/// that touch the seed set.
pub fn best_neighbors(h: &Hypergraph, seeds: &NodeSet, k: usize) -> Vec<usize> {
    best_neighbors_scored(h, seeds, k).into_iter().map(|(v, _)| v).collect()
}

pub fn best_neighbors_scored(h: &Hypergraph, seeds: &NodeSet, k: usize) -> Vec<(usize, f64)> {
    ranked(h, seeds, k, |v, c| c as f64 / h.incident(v).len() as f64)
}

#[derive(Debug, Clone)]
pub struct CliqueExpansion {
    pub graph: Hypergraph,
    /// Hyperedges skipped for having `max_size` or more nodes.
    pub discarded: usize,
}

/// Replaces each hyperedge of size `m < max_size` by a clique with edge
/// weight 1 (or `1/m` when `weighted`); parallel pairs add up.
pub fn clique_expand(h: &Hypergraph, weighted: bool, max_size: usize) -> Result<CliqueExpansion> {
    if max_size < 2 {
        return Err(Error::InvalidParameter(format!(
            "max_size must be at least 2, got {max_size}"
        )));
    }
    let mut pairs: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut discarded = 0;
    for e in h.edges() {
        let m = e.len();
        if m >= max_size {
            discarded += 1;
            continue;
        }
        let w = if weighted { 1.0 / m as f64 } else { 1.0 };
        for (i, &u) in e.iter().enumerate() {
            for &v in &e[i + 1..] {
                *pairs.entry((u, v)).or_insert(0.0) += w;
            }
        }
    }
    let weights: Vec<f64> = pairs.values().copied().collect();
    let edges: Vec<Vec<usize>> = pairs.keys().map(|&(u, v)| vec![u, v]).collect();
    let graph = Hypergraph::from_edges_with(h.num_nodes(), edges, |i, k| {
        CardinalitySplitting::all_or_nothing(k, weights[i])
    })?;
    Ok(CliqueExpansion { graph, discarded })
}

/// Localized conductance on a graph, i.e. the hypergraph routine applied to
/// a 2-uniform input. Used on clique expansions as the graph baseline.
pub fn flowseed_equivalent(
    g: &Hypergraph,
    r: &NodeSet,
    eps: f64,
    seeds: &NodeSet,
    tol: f64,
) -> Result<ClusterReport> {
    if let Some((edge, e)) = g.edges().iter().enumerate().find(|(_, e)| e.len() != 2) {
        return Err(Error::NotTwoUniform {
            edge,
            size: e.len(),
        });
    }
    minimize_hlc(g, r, eps, seeds, tol)
}
