//! Strongly-local minimum s-t cut on `H_alpha`.
//!
//! Only a local hypergraph `L` is ever materialized. It starts as the
//! reference set, its neighborhood and its incident edges; each round solves
//! a min s-t cut on `L` and then explores every node outside the reference
//! set whose sink arc was cut for the first time. When a round explores
//! nothing new, the cut on `L` is a minimum cut of the whole `H_alpha`.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::nodeset::NodeSet;
use crate::reduction::{build_full_instance, build_st_instance};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Debug, Clone)]
pub struct LocalHypergraph {
    nodes: Vec<usize>,
    node_set: HashSet<usize>,
    edges: Vec<usize>,
    edge_set: HashSet<usize>,
    explored: Vec<usize>,
    explored_set: HashSet<usize>,
}

impl LocalHypergraph {
    /// `V_L = R ∪ N(R)`, `E_L = E(R)`, nothing explored.
    pub fn new(h: &Hypergraph, r: &NodeSet) -> Self {
        let mut l = LocalHypergraph {
            nodes: Vec::new(),
            node_set: HashSet::new(),
            edges: Vec::new(),
            edge_set: HashSet::new(),
            explored: Vec::new(),
            explored_set: HashSet::new(),
        };
        for v in r {
            l.add_node(v);
        }
        for v in r {
            l.add_incident(h, v);
        }
        l
    }

    fn add_node(&mut self, v: usize) {
        if self.node_set.insert(v) {
            self.nodes.push(v);
        }
    }

    fn add_incident(&mut self, h: &Hypergraph, v: usize) {
        for &e in h.incident(v) {
            if self.edge_set.insert(e) {
                self.edges.push(e);
                for &u in h.edge(e) {
                    self.add_node(u);
                }
            }
        }
    }

    /// Marks `newly_cut` explored and pulls in their neighborhoods and
    /// incident edges.
    pub fn grow(&mut self, h: &Hypergraph, newly_cut: &NodeSet) {
        for v in newly_cut {
            if self.explored_set.insert(v) {
                self.explored.push(v);
                self.add_node(v);
                self.add_incident(h, v);
            }
        }
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn explored(&self) -> &[usize] {
        &self.explored
    }

    pub fn is_explored(&self, v: usize) -> bool {
        self.explored_set.contains(&v)
    }

    pub fn contains_node(&self, v: usize) -> bool {
        self.node_set.contains(&v)
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.edge_set.contains(&e)
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }
}

/// Size of the local hypergraph and the flow value after one round.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundStats {
    pub round: usize,
    pub local_nodes: usize,
    pub local_edges: usize,
    pub explored: usize,
    pub explored_volume: f64,
    pub newly_explored: usize,
    pub flow_value: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveStats {
    pub alpha: f64,
    pub rounds: Vec<RoundStats>,
    /// Minimum s-t cut value of `H_alpha`.
    pub cut_value: f64,
    pub final_local_nodes: usize,
    pub final_local_edges: usize,
    pub explored_volume: f64,
}

impl SolveStats {
    pub fn num_rounds(&self) -> usize {
        self.rounds.len()
    }
}

/// Drops isolated nodes from the reference set and the seeds, as the
/// locality guarantees assume none. Returns the number dropped.
pub(crate) fn strip_isolated(h: &Hypergraph, r: &NodeSet, seeds: &NodeSet) -> Result<(NodeSet, NodeSet, usize)> {
    if r.is_empty() {
        return Err(Error::EmptyReference);
    }
    h.check_set(r)?;
    if let Some(bad) = seeds.iter().find(|&v| !r.contains(v)) {
        return Err(Error::InvalidSeed(bad));
    }
    let kept: NodeSet = r.iter().filter(|&v| !h.is_isolated(v)).collect();
    let stripped = r.len() - kept.len();
    if kept.is_empty() {
        return Err(Error::IsolatedReference);
    }
    if stripped > 0 {
        log::warn!("removed {stripped} isolated nodes from the reference set");
    }
    let seeds = seeds.intersection(&kept);
    Ok((kept, seeds, stripped))
}

/// Minimizes `cut(S) + alpha vol(R \ S) + alpha eps vol(S \ R)` over all
/// `S ⊆ V` while materializing only a local hypergraph around `R`.
///
/// Isolated reference nodes are removed first (their presence only adds the
/// constant `alpha * 0`).
pub fn solve_strongly_local(
    h: &Hypergraph,
    r: &NodeSet,
    eps: f64,
    alpha: f64,
    seeds: &NodeSet,
) -> Result<(NodeSet, SolveStats)> {
    let (r, seeds, _) = strip_isolated(h, r, seeds)?;
    let mut local = LocalHypergraph::new(h, &r);
    let mut stats = SolveStats {
        alpha,
        ..SolveStats::default()
    };
    loop {
        let mut inst = build_st_instance(h, local.nodes(), local.edges(), &r, eps, alpha, &seeds)?;
        let (value, cut_set) = inst.solve()?;
        let newly: NodeSet = cut_set
            .iter()
            .filter(|&v| !r.contains(v) && !local.is_explored(v))
            .collect();
        local.grow(h, &newly);
        let explored_volume = local.explored().iter().map(|&v| h.degree_unchecked(v)).sum();
        stats.rounds.push(RoundStats {
            round: stats.rounds.len() + 1,
            local_nodes: local.num_nodes(),
            local_edges: local.num_edges(),
            explored: local.explored().len(),
            explored_volume,
            newly_explored: newly.len(),
            flow_value: value,
        });
        if newly.is_empty() {
            stats.cut_value = value;
            stats.final_local_nodes = local.num_nodes();
            stats.final_local_edges = local.num_edges();
            stats.explored_volume = explored_volume;
            return Ok((cut_set, stats));
        }
    }
}

/// Builds all of `H_alpha` and solves it in one shot.
pub fn solve_global(
    h: &Hypergraph,
    r: &NodeSet,
    eps: f64,
    alpha: f64,
    seeds: &NodeSet,
) -> Result<(NodeSet, SolveStats)> {
    let (r, seeds, _) = strip_isolated(h, r, seeds)?;
    let mut inst = build_full_instance(h, &r, eps, alpha, &seeds)?;
    let (value, set) = inst.solve()?;
    let stats = SolveStats {
        alpha,
        rounds: vec![RoundStats {
            round: 1,
            local_nodes: h.num_nodes(),
            local_edges: h.num_edges(),
            explored: 0,
            explored_volume: 0.0,
            newly_explored: 0,
            flow_value: value,
        }],
        cut_value: value,
        final_local_nodes: h.num_nodes(),
        final_local_edges: h.num_edges(),
        explored_volume: 0.0,
    };
    Ok((set, stats))
}
