//! Localized conductance minimization (the HyperLocal outer loop).
//!
//! Starting from `alpha = HLC(R)`, repeatedly find a minimum s-t cut of
//! `H_alpha`. A nonempty minimizer with cut value below `alpha vol(R)` has
//! HLC strictly below `alpha`, so `alpha` is lowered to its HLC and the loop
//! repeats; otherwise the previous set is optimal.

use crate::error::Result;
use crate::hypergraph::Hypergraph;
use crate::local::{solve_global, solve_strongly_local, strip_isolated, SolveStats};
use crate::nodeset::NodeSet;
use serde::{Deserialize, Serialize};

pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Solver {
    StronglyLocal,
    Global,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterOptions {
    pub eps: f64,
    /// Nodes anchored to the source with infinite capacity.
    pub seeds: NodeSet,
    /// Relative improvement an iterate needs to be accepted.
    pub tol: f64,
    pub solver: Solver,
    pub max_iterations: Option<usize>,
}

impl Default for ClusterOptions {
    fn default() -> Self {
        ClusterOptions {
            eps: 1.0,
            seeds: NodeSet::new(),
            tol: DEFAULT_TOL,
            solver: Solver::StronglyLocal,
            max_iterations: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub alpha: f64,
    pub cut: f64,
    pub omega: f64,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterReport {
    pub best_set: NodeSet,
    /// The reference set followed by every accepted iterate.
    pub trace: Vec<TraceEntry>,
    /// Number of s-t cut problems solved.
    pub iterations: usize,
    pub converged: bool,
    pub objective: f64,
    /// Seeds were anchored, so global optimality is not claimed.
    pub anchored: bool,
    pub eps: f64,
    pub stripped_isolated: usize,
    pub warnings: Vec<String>,
    pub solves: Vec<SolveStats>,
}

pub fn minimize_hlc(
    h: &Hypergraph,
    r: &NodeSet,
    eps: f64,
    seeds: &NodeSet,
    tol: f64,
) -> Result<ClusterReport> {
    let opts = ClusterOptions {
        eps,
        seeds: seeds.clone(),
        tol,
        ..ClusterOptions::default()
    };
    minimize_hlc_with(h, r, &opts)
}

pub fn minimize_hlc_with(h: &Hypergraph, r: &NodeSet, opts: &ClusterOptions) -> Result<ClusterReport> {
    let (r, seeds, stripped) = strip_isolated(h, r, &opts.seeds)?;
    let eps = opts.eps;
    if !(eps.is_finite() && eps > 0.0) {
        return Err(crate::Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    let mut warnings = Vec::new();
    let vol_r = h.volume(&r);
    let vol_rest = h.complement_volume(&r);
    if vol_r > vol_rest {
        warnings.push(format!(
            "vol(R) = {vol_r} exceeds vol of its complement = {vol_rest}"
        ));
    }
    let eps0 = h.min_locality(&r);
    if eps < eps0 {
        warnings.push(format!(
            "eps = {eps} is below vol(R)/vol(complement) = {eps0}; quality guarantees do not apply"
        ));
    }
    if stripped > 0 {
        warnings.push(format!("{stripped} isolated reference nodes removed"));
    }
    for w in &warnings {
        log::warn!("{w}");
    }

    let entry = |s: &NodeSet| TraceEntry {
        alpha: h.hlc(&r, eps, s),
        cut: h.cut(s),
        omega: h.omega(&r, eps, s),
        size: s.len(),
    };

    let mut best = r.clone();
    let mut trace = vec![entry(&best)];
    let mut alpha = trace[0].alpha;
    let mut solves = Vec::new();
    let mut converged = true;
    while alpha > 0.0 {
        if opts.max_iterations.is_some_and(|m| solves.len() >= m) {
            converged = false;
            break;
        }
        let (candidate, stats) = match opts.solver {
            Solver::StronglyLocal => solve_strongly_local(h, &r, eps, alpha, &seeds)?,
            Solver::Global => solve_global(h, &r, eps, alpha, &seeds)?,
        };
        solves.push(stats);
        if candidate.is_empty() {
            break;
        }
        let next = entry(&candidate);
        if !(next.alpha < alpha * (1.0 - opts.tol)) {
            break;
        }
        alpha = next.alpha;
        best = candidate;
        trace.push(next);
    }

    let objective = h.hlc(&r, eps, &best);
    Ok(ClusterReport {
        best_set: best,
        trace,
        iterations: solves.len(),
        converged,
        objective,
        anchored: !seeds.is_empty(),
        eps,
        stripped_isolated: stripped,
        warnings,
        solves,
    })
}
