//! Maximum s-t flow / minimum s-t cut by highest-label push-relabel.
//!
//! Uses the gap heuristic and a global relabel every `n` relabels. Heights
//! run up to `2n` so that excess which cannot reach the sink is returned to
//! the source, leaving a true flow from which the minimal minimum cut is
//! read off by residual reachability.
//!
//! Capacities are `f64`; `f64::INFINITY` marks uncuttable arcs. Flow values
//! themselves always stay finite.

use crate::error::{Error, Result};
use std::collections::VecDeque;

/// Capacity of an arc that may never be cut.
pub const INFINITE: f64 = f64::INFINITY;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: f64,
    residual: f64,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    source: usize,
    sink: usize,
    adj: Vec<Vec<usize>>,
    // arc `a` and `a ^ 1` are a forward/reverse pair
    arcs: Vec<Arc>,
    value: Option<f64>,
}

impl FlowNetwork {
    pub fn new(num_nodes: usize, source: usize, sink: usize) -> Self {
        assert!(source < num_nodes && sink < num_nodes, "terminal out of range");
        assert_ne!(source, sink, "source and sink must differ");
        FlowNetwork {
            source,
            sink,
            adj: vec![Vec::new(); num_nodes],
            arcs: Vec::new(),
            value: None,
        }
    }

    pub fn with_capacity(num_nodes: usize, source: usize, sink: usize, arcs: usize) -> Self {
        let mut net = Self::new(num_nodes, source, sink);
        net.arcs.reserve(2 * arcs);
        net
    }

    pub fn num_nodes(&self) -> usize {
        self.adj.len()
    }

    /// Number of forward arcs.
    pub fn num_arcs(&self) -> usize {
        self.arcs.len() / 2
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn add_node(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.value = None;
        self.adj.len() - 1
    }

    /// Adds arc `u -> v` and returns its id.
    pub fn add_arc(&mut self, u: usize, v: usize, cap: f64) -> usize {
        assert!(u < self.adj.len() && v < self.adj.len(), "arc endpoint out of range");
        assert!(cap >= 0.0, "negative capacity {cap}");
        let id = self.arcs.len();
        self.arcs.push(Arc {
            to: v,
            cap,
            residual: cap,
        });
        self.arcs.push(Arc {
            to: u,
            cap: 0.0,
            residual: 0.0,
        });
        self.adj[u].push(id);
        self.adj[v].push(id + 1);
        self.value = None;
        id
    }

    /// `(tail, head, capacity)` of forward arc `id`.
    pub fn arc(&self, id: usize) -> (usize, usize, f64) {
        let a = &self.arcs[id];
        (self.arcs[id ^ 1].to, a.to, a.cap)
    }

    /// Flow on forward arc `id`.
    pub fn flow(&self, id: usize) -> f64 {
        // reverse arcs start with zero capacity, so their residual is the flow
        self.arcs[id ^ 1].residual
    }

    pub fn value(&self) -> Option<f64> {
        self.value
    }

    fn residual_tol(&self) -> f64 {
        let max_cap = self
            .arcs
            .iter()
            .map(|a| a.cap)
            .filter(|c| c.is_finite())
            .fold(0.0, f64::max);
        1e-12 * max_cap.max(1.0)
    }

    /// True if an all-infinite path joins source to sink.
    fn has_infinite_path(&self) -> bool {
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![self.source];
        seen[self.source] = true;
        while let Some(u) = stack.pop() {
            if u == self.sink {
                return true;
            }
            for &a in &self.adj[u] {
                let arc = &self.arcs[a];
                if arc.cap.is_infinite() && !seen[arc.to] {
                    seen[arc.to] = true;
                    stack.push(arc.to);
                }
            }
        }
        false
    }

    /// Computes a maximum flow and returns its value. Returns
    /// [`INFINITE`] when an uncuttable source-sink path exists.
    pub fn max_flow(&mut self) -> f64 {
        for a in &mut self.arcs {
            a.residual = a.cap;
        }
        if self.has_infinite_path() {
            self.value = Some(INFINITE);
            return INFINITE;
        }
        let value = PushRelabel::new(self).run();
        self.value = Some(value);
        value
    }

    /// Nodes reachable from the source in the residual graph: the
    /// inclusion-minimal source side among all minimum cuts.
    pub fn min_cut_source_side(&self) -> Result<Vec<bool>> {
        match self.value {
            None => Err(Error::StaleFlow),
            Some(v) if v.is_infinite() => Err(Error::InvalidParameter(
                "no finite cut separates source and sink".into(),
            )),
            Some(_) => {
                let tol = self.residual_tol();
                let mut side = vec![false; self.adj.len()];
                let mut queue = VecDeque::from([self.source]);
                side[self.source] = true;
                while let Some(u) = queue.pop_front() {
                    for &a in &self.adj[u] {
                        let arc = &self.arcs[a];
                        if arc.residual > tol && !side[arc.to] {
                            side[arc.to] = true;
                            queue.push_back(arc.to);
                        }
                    }
                }
                Ok(side)
            }
        }
    }

    /// Total original capacity of forward arcs leaving `side`.
    pub fn cut_capacity(&self, side: &[bool]) -> f64 {
        (0..self.arcs.len())
            .step_by(2)
            .filter(|&a| side[self.arcs[a ^ 1].to] && !side[self.arcs[a].to])
            .map(|a| self.arcs[a].cap)
            .sum()
    }

    /// Net flow out of every node (inflow counted negative).
    pub fn net_outflow(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.adj.len()];
        for a in (0..self.arcs.len()).step_by(2) {
            let f = self.flow(a);
            let (u, v, _) = self.arc(a);
            out[u] += f;
            out[v] -= f;
        }
        out
    }
}

struct PushRelabel<'a> {
    net: &'a mut FlowNetwork,
    n: usize,
    height: Vec<usize>,
    excess: Vec<f64>,
    current: Vec<usize>,
    buckets: Vec<Vec<usize>>,
    in_bucket: Vec<bool>,
    count: Vec<usize>,
    highest: usize,
    relabels_since_global: usize,
}

impl<'a> PushRelabel<'a> {
    fn new(net: &'a mut FlowNetwork) -> Self {
        let n = net.adj.len();
        PushRelabel {
            net,
            n,
            height: vec![0; n],
            excess: vec![0.0; n],
            current: vec![0; n],
            buckets: vec![Vec::new(); 2 * n + 1],
            in_bucket: vec![false; n],
            count: vec![0; 2 * n + 1],
            highest: 0,
            relabels_since_global: 0,
        }
    }

    fn is_terminal(&self, v: usize) -> bool {
        v == self.net.source || v == self.net.sink
    }

    fn activate(&mut self, v: usize) {
        if !self.in_bucket[v] && !self.is_terminal(v) && self.excess[v] > 0.0 && self.height[v] < 2 * self.n {
            self.in_bucket[v] = true;
            self.buckets[self.height[v]].push(v);
            self.highest = self.highest.max(self.height[v]);
        }
    }

    fn run(mut self) -> f64 {
        let s = self.net.source;
        let finite_total: f64 = self
            .net
            .arcs
            .iter()
            .map(|a| a.cap)
            .filter(|c| c.is_finite())
            .sum();
        // an infinite source arc never carries more than every finite arc combined
        let infinite_push = finite_total + 1.0;
        for i in 0..self.net.adj[s].len() {
            let a = self.net.adj[s][i];
            let cap = self.net.arcs[a].cap;
            if a % 2 == 1 || cap == 0.0 {
                continue;
            }
            let amount = if cap.is_infinite() { infinite_push } else { cap };
            self.push(a, amount);
        }
        self.global_relabel();

        loop {
            while self.highest > 0 && self.buckets[self.highest].is_empty() {
                self.highest -= 1;
            }
            let Some(u) = self.buckets[self.highest].pop() else {
                break;
            };
            self.in_bucket[u] = false;
            if self.height[u] != self.highest || self.excess[u] <= 0.0 {
                self.activate(u);
                continue;
            }
            self.discharge(u);
            if self.relabels_since_global >= self.n {
                self.global_relabel();
            }
        }
        self.excess[self.net.sink]
    }

    fn push(&mut self, a: usize, amount: f64) {
        let arc = &mut self.net.arcs[a];
        let v = arc.to;
        if amount >= arc.residual {
            arc.residual = 0.0;
        } else {
            arc.residual -= amount;
        }
        self.net.arcs[a ^ 1].residual += amount;
        let u = self.net.arcs[a ^ 1].to;
        self.excess[u] -= amount;
        self.excess[v] += amount;
    }

    fn discharge(&mut self, u: usize) {
        while self.excess[u] > 0.0 {
            if self.current[u] == self.net.adj[u].len() {
                if !self.relabel(u) {
                    break;
                }
                continue;
            }
            let a = self.net.adj[u][self.current[u]];
            let (v, res) = (self.net.arcs[a].to, self.net.arcs[a].residual);
            if res > 0.0 && self.height[u] == self.height[v] + 1 {
                let amount = self.excess[u].min(res);
                let was_idle = self.excess[v] <= 0.0;
                self.push(a, amount);
                if was_idle {
                    self.activate(v);
                }
                if self.excess[u] <= 0.0 {
                    break;
                }
            }
            self.current[u] += 1;
        }
        self.activate(u);
    }

    /// Returns false if `u` has no residual arcs left (it is then parked).
    fn relabel(&mut self, u: usize) -> bool {
        self.relabels_since_global += 1;
        let old = self.height[u];
        let mut best = usize::MAX;
        for &a in &self.net.adj[u] {
            let arc = &self.net.arcs[a];
            if arc.residual > 0.0 {
                best = best.min(self.height[arc.to]);
            }
        }
        self.count[old] -= 1;
        self.current[u] = 0;
        if best == usize::MAX || best + 1 >= 2 * self.n {
            self.height[u] = 2 * self.n;
            self.count[2 * self.n] += 1;
            return false;
        }
        let mut new = best + 1;
        if old < self.n && self.count[old] == 0 {
            // gap: nothing at or above `old` (below n) can reach the sink
            for v in 0..self.n {
                let h = self.height[v];
                if h > old && h < self.n && !self.is_terminal(v) {
                    self.count[h] -= 1;
                    self.height[v] = self.n;
                    self.count[self.n] += 1;
                    self.current[v] = 0;
                }
            }
            new = new.max(self.n);
        }
        self.height[u] = new;
        self.count[new] += 1;
        true
    }

    /// Exact distance labels: distance to sink, or `n +` distance to source
    /// for nodes cut off from the sink.
    fn global_relabel(&mut self) {
        self.relabels_since_global = 0;
        let n = self.n;
        let (s, t) = (self.net.source, self.net.sink);
        let unset = usize::MAX;
        let mut height = vec![unset; n];
        let bfs = |root: usize, base: usize, height: &mut Vec<usize>| {
            let mut queue = VecDeque::from([root]);
            height[root] = base;
            while let Some(v) = queue.pop_front() {
                for &a in &self.net.adj[v] {
                    // arc a: v -> w ; reverse a^1: w -> v
                    let w = self.net.arcs[a].to;
                    if height[w] == unset && w != s && self.net.arcs[a ^ 1].residual > 0.0 {
                        height[w] = height[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
        };
        bfs(t, 0, &mut height);
        height[s] = n;
        bfs(s, n, &mut height);
        self.count.iter_mut().for_each(|c| *c = 0);
        for b in &mut self.buckets {
            b.clear();
        }
        self.in_bucket.iter_mut().for_each(|x| *x = false);
        self.highest = 0;
        for v in 0..n {
            let h = if height[v] == unset { 2 * n } else { height[v].min(2 * n) };
            self.height[v] = h;
            self.count[h] += 1;
            self.current[v] = 0;
        }
        for v in 0..n {
            self.activate(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_bottleneck() {
        // 0 = s, 1 = t, 2 = a
        let mut net = FlowNetwork::new(3, 0, 1);
        net.add_arc(0, 2, 2.0);
        net.add_arc(2, 1, 1.0);
        assert_eq!(net.max_flow(), 1.0);
        let side = net.min_cut_source_side().unwrap();
        assert_eq!(side, vec![true, false, true]);
        assert_eq!(net.cut_capacity(&side), 1.0);
    }

    #[test]
    fn no_path_gives_zero() {
        let mut net = FlowNetwork::new(4, 0, 1);
        net.add_arc(0, 2, 5.0);
        net.add_arc(3, 1, 5.0);
        assert_eq!(net.max_flow(), 0.0);
        let side = net.min_cut_source_side().unwrap();
        assert_eq!(side, vec![true, false, true, false]);
    }

    #[test]
    fn parallel_paths_add() {
        let mut net = FlowNetwork::new(4, 0, 1);
        net.add_arc(0, 2, 3.0);
        net.add_arc(2, 1, 3.0);
        net.add_arc(0, 3, 4.0);
        net.add_arc(3, 1, 4.0);
        assert_eq!(net.max_flow(), 7.0);
    }

    #[test]
    fn saturated_direct_arc() {
        let mut net = FlowNetwork::new(2, 0, 1);
        net.add_arc(0, 1, 2.5);
        assert_eq!(net.max_flow(), 2.5);
        assert_eq!(net.min_cut_source_side().unwrap(), vec![true, false]);
    }

    #[test]
    fn min_cut_before_flow_is_stale() {
        let mut net = FlowNetwork::new(2, 0, 1);
        assert_eq!(net.min_cut_source_side(), Err(Error::StaleFlow));
        net.add_arc(0, 1, 1.0);
        net.max_flow();
        net.add_arc(0, 1, 1.0);
        assert_eq!(net.min_cut_source_side(), Err(Error::StaleFlow));
    }

    #[test]
    fn infinite_arcs() {
        let mut net = FlowNetwork::new(3, 0, 1);
        net.add_arc(0, 2, INFINITE);
        net.add_arc(2, 1, 4.0);
        assert_eq!(net.max_flow(), 4.0);
        assert_eq!(net.min_cut_source_side().unwrap(), vec![true, false, true]);
        assert_eq!(net.flow(0), 4.0);

        let mut all = FlowNetwork::new(3, 0, 1);
        all.add_arc(0, 2, INFINITE);
        all.add_arc(2, 1, INFINITE);
        assert_eq!(all.max_flow(), INFINITE);
    }

    #[test]
    fn excess_returns_to_source() {
        // a dead end forces excess back to s
        let mut net = FlowNetwork::new(5, 0, 1);
        net.add_arc(0, 2, 10.0);
        net.add_arc(2, 3, 10.0);
        net.add_arc(2, 1, 1.0);
        net.add_arc(3, 4, 10.0);
        assert_eq!(net.max_flow(), 1.0);
        let out = net.net_outflow();
        for v in 2..5 {
            assert!(out[v].abs() < 1e-12);
        }
        assert_eq!(net.min_cut_source_side().unwrap(), vec![true, false, true, true, true]);
    }
}
