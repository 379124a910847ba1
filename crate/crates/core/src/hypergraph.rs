//! Immutable hypergraph with per-edge cardinality-based splitting functions.

use crate::error::{Error, Result};
use crate::nodeset::NodeSet;
use crate::splitting::{CardinalitySplitting, SplittingSpec};
use std::collections::HashMap;

/// Relative tolerance used when a volume is compared against zero.
pub const VOLUME_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    splitting: Vec<CardinalitySplitting>,
    incidence: Vec<Vec<usize>>,
    degrees: Vec<f64>,
    total_volume: f64,
    max_edge_size: usize,
    dropped_edges: usize,
}

impl Hypergraph {
    /// Builds a hypergraph, asking `split(original_edge_index, size)` for the
    /// splitting function of every retained edge.
    ///
    /// Node ids inside an edge are deduplicated; edges left with fewer than
    /// two nodes are dropped and counted. Repeated edges are kept.
    pub fn from_edges_with<F>(n: usize, edges: Vec<Vec<usize>>, mut split: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<CardinalitySplitting>,
    {
        let mut kept = Vec::with_capacity(edges.len());
        let mut tables = Vec::with_capacity(edges.len());
        let mut dropped = 0;
        for (idx, mut e) in edges.into_iter().enumerate() {
            if let Some(&bad) = e.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidNode { node: bad, n });
            }
            e.sort_unstable();
            e.dedup();
            if e.len() < 2 {
                dropped += 1;
                continue;
            }
            let sf = split(idx, e.len())?;
            if sf.edge_size() != e.len() {
                return Err(Error::InvalidSplitting(format!(
                    "edge {idx} has {} distinct nodes but its splitting table is for size {}",
                    e.len(),
                    sf.edge_size()
                )));
            }
            kept.push(e);
            tables.push(sf);
        }
        if dropped > 0 {
            log::warn!("dropped {dropped} hyperedges with fewer than two distinct nodes");
        }
        Ok(Self::assemble(n, kept, tables, dropped))
    }

    /// Every edge gets `spec` with unit edge weight.
    pub fn with_spec(n: usize, edges: Vec<Vec<usize>>, spec: SplittingSpec) -> Result<Self> {
        Self::from_edges_with(n, edges, |_, k| spec.build(k, 1.0))
    }

    /// Every edge gets `spec` scaled by its own weight.
    pub fn weighted(
        n: usize,
        edges: Vec<Vec<usize>>,
        weights: &[f64],
        spec: SplittingSpec,
    ) -> Result<Self> {
        if weights.len() != edges.len() {
            return Err(Error::InvalidParameter(format!(
                "{} edges but {} weights",
                edges.len(),
                weights.len()
            )));
        }
        Self::from_edges_with(n, edges, |i, k| spec.build(k, weights[i]))
    }

    /// Same edges, new splitting functions.
    pub fn resplit<F>(&self, mut split: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<CardinalitySplitting>,
    {
        let tables = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| split(i, e.len()))
            .collect::<Result<Vec<_>>>()?;
        if let Some((i, t)) = tables
            .iter()
            .enumerate()
            .find(|(i, t)| t.edge_size() != self.edges[*i].len())
        {
            return Err(Error::InvalidSplitting(format!(
                "edge {i} has size {} but table is for size {}",
                self.edges[i].len(),
                t.edge_size()
            )));
        }
        Ok(Self::assemble(self.n, self.edges.clone(), tables, self.dropped_edges))
    }

    fn assemble(
        n: usize,
        edges: Vec<Vec<usize>>,
        splitting: Vec<CardinalitySplitting>,
        dropped_edges: usize,
    ) -> Self {
        let mut incidence = vec![Vec::new(); n];
        let mut degrees = vec![0.0; n];
        for (e, members) in edges.iter().enumerate() {
            let w = splitting[e].singleton();
            for &v in members {
                incidence[v].push(e);
                degrees[v] += w;
            }
        }
        let total_volume = degrees.iter().sum();
        let max_edge_size = edges.iter().map(Vec::len).max().unwrap_or(0);
        Hypergraph {
            n,
            edges,
            splitting,
            incidence,
            degrees,
            total_volume,
            max_edge_size,
            dropped_edges,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &[usize] {
        &self.edges[e]
    }

    pub fn splitting(&self, e: usize) -> &CardinalitySplitting {
        &self.splitting[e]
    }

    /// Incident edge ids of `v`, the `E(v)` oracle.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn max_edge_size(&self) -> usize {
        self.max_edge_size
    }

    /// Number of input edges dropped at construction for having < 2 nodes.
    pub fn dropped_edges(&self) -> usize {
        self.dropped_edges
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.incidence[v].is_empty()
    }

    pub fn check_node(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::InvalidNode { node: v, n: self.n });
        }
        Ok(())
    }

    pub fn check_set(&self, s: &NodeSet) -> Result<()> {
        match s.max() {
            Some(v) if v >= self.n => Err(Error::InvalidNode { node: v, n: self.n }),
            _ => Ok(()),
        }
    }

    /// Sum over incident edges of the singleton penalty.
    pub fn degree(&self, v: usize) -> Result<f64> {
        self.check_node(v)?;
        Ok(self.degrees[v])
    }

    #[inline]
    pub(crate) fn degree_unchecked(&self, v: usize) -> f64 {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    pub fn total_volume(&self) -> f64 {
        self.total_volume
    }

    pub fn volume(&self, s: &NodeSet) -> f64 {
        s.iter().map(|v| self.degrees[v]).sum()
    }

    /// Volume of `V \ S`, computed without materializing the complement.
    pub fn complement_volume(&self, s: &NodeSet) -> f64 {
        let rest = self.total_volume - self.volume(s);
        if rest <= VOLUME_TOL * self.total_volume {
            0.0
        } else {
            rest
        }
    }

    /// `|e ∩ S|` for every edge touching `S`.
    fn overlaps(&self, s: &NodeSet) -> HashMap<usize, usize> {
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for v in s {
            for &e in &self.incidence[v] {
                *counts.entry(e).or_insert(0) += 1;
            }
        }
        counts
    }

    /// Generalized cut: sum of splitting penalties over edges touching `S`.
    pub fn cut(&self, s: &NodeSet) -> f64 {
        let mut touched: Vec<(usize, usize)> = self.overlaps(s).into_iter().collect();
        touched.sort_unstable();
        touched
            .into_iter()
            .map(|(e, c)| self.splitting[e].eval(c))
            .sum()
    }

    /// Ids of edges with members on both sides of `S`, ascending.
    pub fn boundary(&self, s: &NodeSet) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .overlaps(s)
            .into_iter()
            .filter(|&(e, c)| c < self.edges[e].len())
            .map(|(e, _)| e)
            .collect();
        out.sort_unstable();
        out
    }

    pub fn conductance(&self, s: &NodeSet) -> f64 {
        let vs = self.volume(s);
        let denom = vs.min(self.complement_volume(s));
        if denom <= 0.0 {
            return f64::INFINITY;
        }
        self.cut(s) / denom
    }

    pub fn ncut(&self, s: &NodeSet) -> f64 {
        let vs = self.volume(s);
        let vc = self.complement_volume(s);
        if vs <= 0.0 || vc <= 0.0 {
            return f64::INFINITY;
        }
        let c = self.cut(s);
        c / vs + c / vc
    }

    /// Union of co-members of all edges incident to `S`.
    pub fn neighborhood(&self, s: &NodeSet) -> NodeSet {
        s.iter()
            .flat_map(|v| self.incidence[v].iter())
            .flat_map(|&e| self.edges[e].iter().copied())
            .collect()
    }

    /// `vol(S ∩ R) - eps * vol(S \ R)`.
    pub fn omega(&self, r: &NodeSet, eps: f64, s: &NodeSet) -> f64 {
        let (mut inside, mut outside) = (0.0, 0.0);
        for v in s {
            if r.contains(v) {
                inside += self.degrees[v];
            } else {
                outside += self.degrees[v];
            }
        }
        inside - eps * outside
    }

    /// Localized conductance `cut(S) / Ω(S)`, infinite unless `Ω(S)` is
    /// positive beyond rounding (see [`omega_is_positive`]).
    pub fn hlc(&self, r: &NodeSet, eps: f64, s: &NodeSet) -> f64 {
        let om = self.omega(r, eps, s);
        if omega_is_positive(om, self.volume(&s.intersection(r))) {
            self.cut(s) / om
        } else {
            f64::INFINITY
        }
    }

    /// Smallest admissible locality parameter `vol(R) / vol(V \ R)`.
    pub fn min_locality(&self, r: &NodeSet) -> f64 {
        let vc = self.complement_volume(r);
        if vc <= 0.0 {
            f64::INFINITY
        } else {
            self.volume(r) / vc
        }
    }
}

/// Whether `vol(S ∩ R) - eps vol(S \ R)` is positive once rounding is
/// discounted. At `eps = vol(R)/vol(V \ R)` the full node set has overlap
/// exactly zero, which floating point may report as a tiny positive number.
pub fn omega_is_positive(omega: f64, vol_inside: f64) -> bool {
    omega > VOLUME_TOL * vol_inside.max(1.0)
}
