//! Planted-cluster hypergraph generator.
//!
//! Clusters occupy the first `sum(cluster_sizes)` node ids in order; any
//! remaining nodes are background. For a cluster of size `c`, about
//! `p_in * c^2 / mean_edge_size` edges are drawn inside it, which gives each
//! member an expected intra-cluster degree near `p_in * c`. About
//! `p_cross * n^2 / mean_edge_size` further edges are drawn uniformly over
//! all nodes. Optional large edges each take a `large_purity` fraction of
//! their members from one cluster and the rest from anywhere.

use super::io::LabeledDataset;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::nodeset::NodeSet;
use crate::splitting::SplittingSpec;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedConfig {
    pub n_nodes: usize,
    pub cluster_sizes: Vec<usize>,
    /// Inclusive range of ordinary edge sizes.
    pub edge_size: (usize, usize),
    pub p_in: f64,
    pub p_cross: f64,
    pub large_edges_per_cluster: usize,
    pub large_size: (usize, usize),
    pub large_purity: f64,
    pub spec: SplittingSpec,
    pub seed: u64,
}

impl PlantedConfig {
    pub fn uniform(
        n_nodes: usize,
        n_clusters: usize,
        cluster_size: usize,
        edge_size: (usize, usize),
        p_in: f64,
        p_cross: f64,
        seed: u64,
    ) -> Self {
        PlantedConfig {
            n_nodes,
            cluster_sizes: vec![cluster_size; n_clusters],
            edge_size,
            p_in,
            p_cross,
            large_edges_per_cluster: 0,
            large_size: (0, 0),
            large_purity: 1.0,
            spec: SplittingSpec::AllOrNothing { weight: 1.0 },
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        let planted: usize = self.cluster_sizes.iter().sum();
        if planted > self.n_nodes {
            return bad(format!("clusters need {planted} nodes but only {} exist", self.n_nodes));
        }
        let (lo, hi) = self.edge_size;
        if lo < 2 || lo > hi {
            return bad(format!("edge size range {lo}..={hi} is invalid"));
        }
        if hi > self.n_nodes {
            return bad(format!("edges of size {hi} do not fit in {} nodes", self.n_nodes));
        }
        if let Some(&c) = self.cluster_sizes.iter().find(|&&c| c < lo) {
            return bad(format!("cluster of size {c} cannot hold edges of size {lo}"));
        }
        for (name, p) in [("p_in", self.p_in), ("p_cross", self.p_cross)] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} = {p} is not a probability"));
            }
        }
        if self.large_edges_per_cluster > 0 {
            let (lo, hi) = self.large_size;
            if lo < 2 || lo > hi || hi > self.n_nodes {
                return bad(format!("large edge size range {lo}..={hi} is invalid"));
            }
            if !(0.0..=1.0).contains(&self.large_purity) {
                return bad(format!("large_purity = {} is not a fraction", self.large_purity));
            }
        }
        Ok(())
    }
}

fn mean(range: (usize, usize)) -> f64 {
    (range.0 + range.1) as f64 / 2.0
}

/// `k` distinct nodes from `offset..offset + pool`.
fn draw(rng: &mut ChaCha8Rng, offset: usize, pool: usize, k: usize) -> Vec<usize> {
    sample(rng, pool, k.min(pool)).into_iter().map(|i| offset + i).collect()
}

pub fn generate(cfg: &PlantedConfig) -> Result<LabeledDataset> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.n_nodes;
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut labels = BTreeMap::new();
    let mut offset = 0;
    let mean_k = mean(cfg.edge_size);
    let width = cfg.cluster_sizes.len().max(1).to_string().len();
    for (c, &size) in cfg.cluster_sizes.iter().enumerate() {
        let m_in = (cfg.p_in * (size * size) as f64 / mean_k).round() as usize;
        for _ in 0..m_in {
            let k = rng.gen_range(cfg.edge_size.0..=cfg.edge_size.1);
            edges.push(draw(&mut rng, offset, size, k));
        }
        for _ in 0..cfg.large_edges_per_cluster {
            let k = rng.gen_range(cfg.large_size.0..=cfg.large_size.1);
            let inside = ((k as f64 * cfg.large_purity).round() as usize).min(size);
            let mut e = draw(&mut rng, offset, size, inside);
            while e.len() < k {
                let v = rng.gen_range(0..n);
                if !e.contains(&v) {
                    e.push(v);
                }
            }
            edges.push(e);
        }
        labels.insert(
            format!("cluster{c:0width$}"),
            (offset..offset + size).collect::<NodeSet>(),
        );
        offset += size;
    }
    let m_cross = (cfg.p_cross * (n * n) as f64 / mean_k).round() as usize;
    for _ in 0..m_cross {
        let k = rng.gen_range(cfg.edge_size.0..=cfg.edge_size.1);
        edges.push(draw(&mut rng, 0, n, k));
    }
    let weights = vec![1.0; edges.len()];
    let h = Hypergraph::weighted(n, edges, &weights, cfg.spec)?;
    let mut ds = LabeledDataset::from_hypergraph(h, weights, cfg.spec);
    ds.labels = labels;
    Ok(ds)
}

/// `n_clusters` clusters of `cluster_size` nodes each; see the module docs.
pub fn synth_planted(
    n_nodes: usize,
    n_clusters: usize,
    cluster_size: usize,
    edge_size_range: (usize, usize),
    p_in: f64,
    p_cross: f64,
    seed: u64,
) -> Result<LabeledDataset> {
    generate(&PlantedConfig::uniform(
        n_nodes,
        n_clusters,
        cluster_size,
        edge_size_range,
        p_in,
        p_cross,
        seed,
    ))
}
