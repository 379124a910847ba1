//! Directed-graph encoding of hypergraph s-t cut instances.
//!
//! Every hyperedge with a delta-linear splitting function is replaced by two
//! auxiliary nodes `v'`, `v''` joined by an arc of capacity `scale * delta`,
//! with arcs `v -> v'` and `v'' -> v` of capacity `scale` for each member.
//! Terminal arcs follow the auxiliary hypergraph `H_alpha`: `s -> r` with
//! capacity `alpha * d_r` for reference nodes and `j -> t` with capacity
//! `alpha * eps * d_j` for the rest. Degrees always come from the full
//! hypergraph, even when only a local piece of it is encoded.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::maxflow::{FlowNetwork, INFINITE};
use crate::nodeset::NodeSet;
use crate::splitting::CardinalitySplitting;
use std::collections::HashMap;

pub const SOURCE: usize = 0;
pub const SINK: usize = 1;

/// Appends the gadget for one hyperedge whose members already live in
/// `net` at ids `members`. Returns the auxiliary pair `(v', v'')`.
pub fn gadget_expand(
    net: &mut FlowNetwork,
    edge: usize,
    members: &[usize],
    sf: &CardinalitySplitting,
) -> Result<(usize, usize)> {
    let form = sf
        .delta_linear_form()
        .ok_or(Error::UnsupportedSplitting { edge })?;
    let v_in = net.add_node();
    let v_out = net.add_node();
    net.add_arc(v_in, v_out, form.scale * form.delta);
    for &v in members {
        net.add_arc(v, v_in, form.scale);
        net.add_arc(v_out, v, form.scale);
    }
    Ok((v_in, v_out))
}

/// A built (possibly local) s-t cut instance.
#[derive(Debug, Clone)]
pub struct StCutInstance {
    pub net: FlowNetwork,
    nodes: Vec<usize>,
    index: HashMap<usize, usize>,
    edges: Vec<usize>,
    aux: Vec<(usize, usize)>,
    pub alpha: f64,
    pub eps: f64,
    pub seeds: NodeSet,
}

impl StCutInstance {
    /// Network id of hypergraph node `v`, if it is included.
    pub fn network_id(&self, v: usize) -> Option<usize> {
        self.index.get(&v).copied()
    }

    /// Included hypergraph nodes in network order.
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    /// Included hyperedge ids, in the order their gadgets were built.
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    /// Auxiliary `(v', v'')` pair of the `i`-th included edge.
    pub fn aux_pair(&self, i: usize) -> (usize, usize) {
        self.aux[i]
    }

    /// Runs max-flow and maps the minimal source side back to hypergraph
    /// nodes, dropping terminals and auxiliary nodes.
    pub fn solve(&mut self) -> Result<(f64, NodeSet)> {
        let value = self.net.max_flow();
        let side = self.net.min_cut_source_side()?;
        let set = self
            .nodes
            .iter()
            .enumerate()
            .filter(|&(i, _)| side[i + 2])
            .map(|(_, &v)| v)
            .collect();
        Ok((value, set))
    }
}

fn check_params(alpha: f64, eps: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    Ok(())
}

/// Builds the instance over `nodes` and `edges` of `h`. Every member of an
/// included edge must be an included node.
pub fn build_st_instance(
    h: &Hypergraph,
    nodes: &[usize],
    edges: &[usize],
    r: &NodeSet,
    eps: f64,
    alpha: f64,
    seeds: &NodeSet,
) -> Result<StCutInstance> {
    check_params(alpha, eps)?;
    if let Some(bad) = seeds.iter().find(|&v| !r.contains(v)) {
        return Err(Error::InvalidSeed(bad));
    }
    let arc_estimate = nodes.len() + edges.iter().map(|&e| 2 * h.edge(e).len() + 1).sum::<usize>();
    let mut net = FlowNetwork::with_capacity(2 + nodes.len(), SOURCE, SINK, arc_estimate);
    let mut index = HashMap::with_capacity(nodes.len());
    for (i, &v) in nodes.iter().enumerate() {
        h.check_node(v)?;
        index.insert(v, i + 2);
        let d = h.degree_unchecked(v);
        if r.contains(v) {
            let cap = if seeds.contains(v) { INFINITE } else { alpha * d };
            net.add_arc(SOURCE, i + 2, cap);
        } else {
            net.add_arc(i + 2, SINK, alpha * eps * d);
        }
    }
    let mut aux = Vec::with_capacity(edges.len());
    let mut members = Vec::new();
    for &e in edges {
        members.clear();
        for &v in h.edge(e) {
            let id = index.get(&v).copied().ok_or_else(|| {
                Error::InvalidParameter(format!("edge {e} includes node {v} outside the instance"))
            })?;
            members.push(id);
        }
        aux.push(gadget_expand(&mut net, e, &members, h.splitting(e))?);
    }
    Ok(StCutInstance {
        net,
        nodes: nodes.to_vec(),
        index,
        edges: edges.to_vec(),
        aux,
        alpha,
        eps,
        seeds: seeds.clone(),
    })
}

/// The whole of `H_alpha`.
pub fn build_full_instance(
    h: &Hypergraph,
    r: &NodeSet,
    eps: f64,
    alpha: f64,
    seeds: &NodeSet,
) -> Result<StCutInstance> {
    h.check_set(r)?;
    let nodes: Vec<usize> = (0..h.num_nodes()).collect();
    let edges: Vec<usize> = (0..h.num_edges()).collect();
    build_st_instance(h, &nodes, &edges, r, eps, alpha, seeds)
}

/// Value of the cut `S ∪ {s}` in `H_alpha`:
/// `cut(S) + alpha vol(R \ S) + alpha eps vol(S \ R)`.
pub fn hypergraph_st_cut(h: &Hypergraph, r: &NodeSet, eps: f64, alpha: f64, s: &NodeSet) -> f64 {
    let r_out: f64 = r.iter().filter(|&v| !s.contains(v)).map(|v| h.degree_unchecked(v)).sum();
    let s_out: f64 = s.iter().filter(|&v| !r.contains(v)).map(|v| h.degree_unchecked(v)).sum();
    h.cut(s) + alpha * r_out + alpha * eps * s_out
}

/// Same objective restricted to a sub-hypergraph: only `edges` contribute
/// cut penalties and only `nodes` carry terminal arcs.
pub fn local_st_cut(
    h: &Hypergraph,
    nodes: &[usize],
    edges: &[usize],
    r: &NodeSet,
    eps: f64,
    alpha: f64,
    s: &NodeSet,
) -> f64 {
    let cut: f64 = edges
        .iter()
        .map(|&e| {
            let inside = h.edge(e).iter().filter(|&&v| s.contains(v)).count();
            h.splitting(e).eval(inside)
        })
        .sum();
    let terminal: f64 = nodes
        .iter()
        .map(|&v| {
            let d = h.degree_unchecked(v);
            match (r.contains(v), s.contains(v)) {
                (true, false) => alpha * d,
                (false, true) => alpha * eps * d,
                _ => 0.0,
            }
        })
        .sum();
    cut + terminal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splitting::SplittingSpec;

    /// Cheapest placement of the auxiliary pair for a gadget whose members
    /// on the source side are exactly `a_side` (bit i = member i).
    fn brute_gadget_cost(k: usize, delta: f64, scale: f64, a_side: u32) -> f64 {
        let mut best = f64::INFINITY;
        for place in 0..4u32 {
            let vin_src = place & 1 == 1;
            let vout_src = place & 2 == 2;
            let mut cost = 0.0;
            if vin_src && !vout_src {
                cost += scale * delta;
            }
            for i in 0..k {
                let src = a_side >> i & 1 == 1;
                if src && !vin_src {
                    cost += scale;
                }
                if vout_src && !src {
                    cost += scale;
                }
            }
            best = best.min(cost);
        }
        best
    }

    #[test]
    fn gadget_small_cases() {
        assert_eq!(brute_gadget_cost(3, 1.0, 1.0, 0b001), 1.0);
        assert_eq!(brute_gadget_cost(5, 2.0, 1.0, 0b00011), 2.0);
        assert_eq!(brute_gadget_cost(5, 2.0, 1.0, 0), 0.0);
    }

    #[test]
    fn gadget_arc_structure() {
        let mut net = FlowNetwork::new(5, 0, 1);
        let sf = CardinalitySplitting::delta_linear(3, 2.0, 1.5).unwrap();
        let (a, b) = gadget_expand(&mut net, 0, &[2, 3, 4], &sf).unwrap();
        assert_eq!((a, b), (5, 6));
        assert_eq!(net.num_arcs(), 2 * 3 + 1);
        assert_eq!(net.arc(0), (5, 6, 3.0));
        let clique = CardinalitySplitting::clique_penalty(6, 1.0).unwrap();
        let mut net = FlowNetwork::new(8, 0, 1);
        assert_eq!(
            gadget_expand(&mut net, 7, &[2, 3, 4, 5, 6, 7], &clique),
            Err(Error::UnsupportedSplitting { edge: 7 })
        );
    }

    #[test]
    fn empty_set_costs_alpha_vol_r() {
        let h = Hypergraph::with_spec(
            5,
            vec![vec![0, 1, 2], vec![2, 3], vec![3, 4]],
            SplittingSpec::delta_linear(1.0),
        )
        .unwrap();
        let r = NodeSet::from([0, 1]);
        let alpha = 0.3;
        assert!((hypergraph_st_cut(&h, &r, 1.0, alpha, &NodeSet::new()) - alpha * h.volume(&r)).abs() < 1e-12);
    }

    #[test]
    fn seeds_must_be_in_reference() {
        let h = Hypergraph::with_spec(3, vec![vec![0, 1, 2]], SplittingSpec::delta_linear(1.0)).unwrap();
        let err = build_full_instance(&h, &NodeSet::from([0]), 1.0, 0.5, &NodeSet::from([1]));
        assert_eq!(err.err(), Some(Error::InvalidSeed(1)));
        assert!(build_full_instance(&h, &NodeSet::from([0]), 1.0, 0.0, &NodeSet::new()).is_err());
    }

    #[test]
    fn two_uniform_instance_matches_classic_flow_graph() {
        // the classic local-conductance network: s->r (alpha d_r),
        // j->t (alpha eps d_j), and both directions of each edge with weight w
        let edges = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![0, 2]];
        let h = Hypergraph::with_spec(5, edges.clone(), SplittingSpec::AllOrNothing { weight: 1.0 }).unwrap();
        let r = NodeSet::from([0, 1]);
        let (eps, alpha) = (0.5, 0.4);
        let inst = build_full_instance(&h, &r, eps, alpha, &NodeSet::new()).unwrap();
        let mut classic = FlowNetwork::new(7, 0, 1);
        for v in 0..5 {
            let d = h.degree(v).unwrap();
            if r.contains(v) {
                classic.add_arc(0, v + 2, alpha * d);
            } else {
                classic.add_arc(v + 2, 1, alpha * eps * d);
            }
        }
        for e in &edges {
            classic.add_arc(e[0] + 2, e[1] + 2, 1.0);
            classic.add_arc(e[1] + 2, e[0] + 2, 1.0);
        }
        // terminal arcs agree arc by arc
        for v in 0..5 {
            assert_eq!(inst.net.arc(v).2, classic.arc(v).2);
        }
        // and every cut of the original nodes costs the same
        for mask in 0u32..32 {
            let s = NodeSet::from_mask(mask as u64);
            let mut side = vec![false; 7];
            side[0] = true;
            for v in &s {
                side[v + 2] = true;
            }
            let classic_cost = classic.cut_capacity(&side);
            let hyper = hypergraph_st_cut(&h, &r, eps, alpha, &s);
            assert!((classic_cost - hyper).abs() < 1e-12);
        }
        let mut a = inst;
        let (v1, _) = a.solve().unwrap();
        assert!((v1 - classic.max_flow()).abs() < 1e-12);
    }

    #[test]
    fn seeds_stay_on_source_side() {
        let h = Hypergraph::with_spec(
            6,
            vec![vec![0, 1], vec![1, 2, 3], vec![3, 4, 5], vec![0, 5]],
            SplittingSpec::delta_linear(1.0),
        )
        .unwrap();
        let r = NodeSet::from([0, 1, 2]);
        let seeds = NodeSet::from([2]);
        for alpha in [1e-3, 0.1, 0.5, 2.0] {
            let mut inst = build_full_instance(&h, &r, 1.0, alpha, &seeds).unwrap();
            let (_, s) = inst.solve().unwrap();
            assert!(s.contains(2));
        }
    }
}
