//! Checks a finished run against the cut-improvement guarantees.
//!
//! With `eps0 = vol(R)/vol(R̄) <= 1`, `eps` in `[eps0, eps0 + 1)` and
//! `mu = eps - eps0`, the exact minimizer `S*` satisfies
//!
//! * `cond(S*) <= cond(T)` for every nonempty `T ⊆ R`;
//! * `cond(S*) <= cond(T) / (gamma - mu)` whenever `vol(T) <= vol(T̄)` and
//!   `vol(T∩R)/vol(T) >= vol(R)/vol(V) + gamma vol(R̄)/vol(V)` with
//!   `gamma` in `(mu, 1)`;
//! * `ncut(S*) <= ncut(T) / (beta + 2 mu beta - 2 mu)` whenever
//!   `vol(T) <= vol(T̄)` and `vol(T∩R)/vol(T) >= vol(T̄∩R)/vol(T̄) + beta`
//!   with `beta` in `(2mu/(1+2mu), 1)`.
//!
//! The largest admissible `gamma` and `beta` are measured from `T`; a value
//! of 1 or more is capped at 1, where the bound holds as a limit.

use crate::cluster::ClusterReport;
use crate::hypergraph::Hypergraph;
use crate::nodeset::NodeSet;
use serde::{Deserialize, Serialize};

pub const BOUND_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremCheckInput {
    pub t: NodeSet,
    pub r: NodeSet,
    pub eps: f64,
    pub eps0: f64,
    pub mu: f64,
    /// Largest `gamma` satisfying the conductance overlap condition.
    pub gamma: f64,
    /// Largest `beta` satisfying the normalized cut overlap condition.
    pub beta: f64,
    /// `vol(R̄) vol(T∩R) - vol(R) vol(T∩R̄)`.
    pub g_t: f64,
    pub vol_t: f64,
    pub vol_t_complement: f64,
}

impl TheoremCheckInput {
    pub fn measure(h: &Hypergraph, r: &NodeSet, t: &NodeSet, eps: f64) -> Self {
        let vol_v = h.total_volume();
        let vol_r = h.volume(r);
        let vol_rc = h.complement_volume(r);
        let vol_t = h.volume(t);
        let vol_tc = h.complement_volume(t);
        let t_in_r = h.volume(&t.intersection(r));
        let r_outside_t = vol_r - t_in_r;
        let eps0 = h.min_locality(r);
        let gamma = if vol_t > 0.0 && vol_rc > 0.0 {
            (t_in_r / vol_t - vol_r / vol_v) * vol_v / vol_rc
        } else {
            f64::NEG_INFINITY
        };
        let beta = if vol_t > 0.0 && vol_tc > 0.0 {
            t_in_r / vol_t - r_outside_t / vol_tc
        } else {
            f64::NEG_INFINITY
        };
        TheoremCheckInput {
            t: t.clone(),
            r: r.clone(),
            eps,
            eps0,
            mu: eps - eps0,
            gamma,
            beta,
            g_t: vol_rc * t_in_r - vol_r * (vol_t - t_in_r),
            vol_t,
            vol_t_complement: vol_tc,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub status: CheckStatus,
    /// Score of the returned set.
    pub value: f64,
    pub bound: f64,
    /// `bound - value`; negative means violated.
    pub slack: f64,
}

impl BoundCheck {
    fn skipped(name: &str, why: impl Into<String>) -> Self {
        BoundCheck {
            name: name.to_string(),
            status: CheckStatus::Skipped(why.into()),
            value: f64::NAN,
            bound: f64::NAN,
            slack: f64::NAN,
        }
    }

    fn compare(name: &str, value: f64, bound: f64) -> Self {
        let ok = value <= bound + BOUND_TOL * bound.abs().max(1.0);
        BoundCheck {
            name: name.to_string(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            value,
            bound,
            slack: bound - value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremLedger {
    pub input: TheoremCheckInput,
    pub checks: Vec<BoundCheck>,
}

impl TheoremLedger {
    pub fn violations(&self) -> usize {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail).count()
    }

    pub fn applied(&self) -> usize {
        self.checks.iter().filter(|c| !matches!(c.status, CheckStatus::Skipped(_))).count()
    }

    pub fn get(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const COND_SUBSET: &str = "conductance_subset";
pub const COND_OVERLAP: &str = "conductance_overlap";
pub const NCUT_OVERLAP: &str = "ncut_overlap";
pub const CUT_DECREASE: &str = "cut_decrease";

/// Checks every bound whose hypotheses `input` meets. Inapplicable bounds
/// are reported as skipped, never as failures.
pub fn check_theorems(h: &Hypergraph, report: &ClusterReport, input: &TheoremCheckInput) -> TheoremLedger {
    let mut checks = Vec::new();

    let strictly_decreasing = report
        .trace
        .windows(2)
        .all(|w| w[1].cut < w[0].cut && w[1].alpha < w[0].alpha && w[1].omega < w[0].omega);
    checks.push(BoundCheck {
        name: CUT_DECREASE.to_string(),
        status: if strictly_decreasing { CheckStatus::Pass } else { CheckStatus::Fail },
        value: report.trace.len() as f64,
        bound: f64::NAN,
        slack: f64::NAN,
    });

    let names = [COND_SUBSET, COND_OVERLAP, NCUT_OVERLAP];
    let global_skip = if report.anchored {
        Some("seeds were anchored".to_string())
    } else if !report.converged {
        Some("run did not converge".to_string())
    } else if input.eps0 > 1.0 {
        Some(format!("eps0 = {} exceeds 1", input.eps0))
    } else if !(input.eps >= input.eps0 && input.eps < input.eps0 + 1.0) {
        Some(format!("eps = {} is outside [eps0, eps0 + 1)", input.eps))
    } else if input.t.is_empty() || input.t.len() == h.num_nodes() {
        Some("T must be a nonempty proper subset".to_string())
    } else {
        None
    };
    if let Some(why) = global_skip {
        checks.extend(names.iter().map(|n| BoundCheck::skipped(n, why.clone())));
        return TheoremLedger {
            input: input.clone(),
            checks,
        };
    }

    let s = &report.best_set;
    let cond_s = h.conductance(s);
    let ncut_s = h.ncut(s);
    let cond_t = h.conductance(&input.t);
    let ncut_t = h.ncut(&input.t);
    let mu = input.mu;

    checks.push(if input.t.is_subset(&input.r) {
        BoundCheck::compare(COND_SUBSET, cond_s, cond_t)
    } else {
        BoundCheck::skipped(COND_SUBSET, "T is not inside R")
    });

    let small_side = input.vol_t <= input.vol_t_complement;
    let gamma = input.gamma.min(1.0);
    checks.push(if !small_side {
        BoundCheck::skipped(COND_OVERLAP, "vol(T) exceeds vol of its complement")
    } else if gamma <= mu {
        BoundCheck::skipped(COND_OVERLAP, format!("gamma = {gamma} is not above mu = {mu}"))
    } else {
        BoundCheck::compare(COND_OVERLAP, cond_s, cond_t / (gamma - mu))
    });

    let beta = input.beta.min(1.0);
    let beta_min = 2.0 * mu / (1.0 + 2.0 * mu);
    checks.push(if !small_side {
        BoundCheck::skipped(NCUT_OVERLAP, "vol(T) exceeds vol of its complement")
    } else if beta <= beta_min {
        BoundCheck::skipped(NCUT_OVERLAP, format!("beta = {beta} is not above {beta_min}"))
    } else {
        BoundCheck::compare(NCUT_OVERLAP, ncut_s, ncut_t / (beta + 2.0 * mu * beta - 2.0 * mu))
    });

    TheoremLedger {
        input: input.clone(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::{minimize_hlc, DEFAULT_TOL};
    use crate::splitting::SplittingSpec;

    /// Two 4-cycles joined by two bridges. Each cycle has half the volume.
    fn two_cycles() -> Hypergraph {
        let edges = vec![
            vec![0, 1],
            vec![1, 2],
            vec![2, 3],
            vec![3, 0],
            vec![4, 5],
            vec![5, 6],
            vec![6, 7],
            vec![7, 4],
            vec![0, 4],
            vec![2, 6],
        ];
        Hypergraph::with_spec(8, edges, SplittingSpec::AllOrNothing { weight: 1.0 }).unwrap()
    }

    #[test]
    fn worked_configuration() {
        let h = two_cycles();
        let t = NodeSet::from([0, 1, 2, 3]);
        let r = NodeSet::from([0, 1]);
        assert_eq!(h.volume(&t), h.total_volume() / 2.0);
        assert_eq!(h.volume(&r), h.volume(&t) / 2.0);
        let eps0 = h.min_locality(&r);
        let input = TheoremCheckInput::measure(&h, &r, &t, eps0);
        assert!((input.gamma - 1.0 / 3.0).abs() < 1e-12);
        assert!((input.beta - 0.5).abs() < 1e-12);
        assert_eq!(input.mu, 0.0);

        let report = minimize_hlc(&h, &r, eps0, &NodeSet::new(), DEFAULT_TOL).unwrap();
        let ledger = check_theorems(&h, &report, &input);
        assert_eq!(ledger.violations(), 0);
        let cond = ledger.get(COND_OVERLAP).unwrap();
        assert_eq!(cond.status, CheckStatus::Pass);
        assert!((cond.bound - 3.0 * h.conductance(&t)).abs() < 1e-12);
        let ncut = ledger.get(NCUT_OVERLAP).unwrap();
        assert_eq!(ncut.status, CheckStatus::Pass);
        assert!((ncut.bound - 2.0 * h.ncut(&t)).abs() < 1e-12);
        // T is not inside R here
        assert!(matches!(ledger.get(COND_SUBSET).unwrap().status, CheckStatus::Skipped(_)));
    }

    #[test]
    fn subsets_of_the_reference() {
        let h = two_cycles();
        let r = NodeSet::from([0, 1, 2, 3]);
        let eps0 = h.min_locality(&r);
        let report = minimize_hlc(&h, &r, eps0, &NodeSet::new(), DEFAULT_TOL).unwrap();
        for mask in 1u64..16 {
            let t = NodeSet::from_mask(mask);
            let ledger = check_theorems(&h, &report, &TheoremCheckInput::measure(&h, &r, &t, eps0));
            assert_eq!(ledger.get(COND_SUBSET).unwrap().status, CheckStatus::Pass);
            assert_eq!(ledger.violations(), 0);
        }
    }

    #[test]
    fn inapplicable_checks_are_skipped() {
        let h = two_cycles();
        let r = NodeSet::from([0, 1]);
        // T far from R: beta is negative, so the ncut bound has no hypothesis
        let t = NodeSet::from([5, 6, 7]);
        let input = TheoremCheckInput::measure(&h, &r, &t, 1.0);
        assert!(input.beta < 0.0);
        let report = minimize_hlc(&h, &r, 1.0, &NodeSet::new(), DEFAULT_TOL).unwrap();
        let ledger = check_theorems(&h, &report, &input);
        assert!(matches!(ledger.get(NCUT_OVERLAP).unwrap().status, CheckStatus::Skipped(_)));
        assert_eq!(ledger.violations(), 0);

        let anchored = minimize_hlc(&h, &r, 1.0, &NodeSet::from([0]), DEFAULT_TOL).unwrap();
        let ledger = check_theorems(&h, &anchored, &input);
        assert_eq!(ledger.applied(), 1);
    }

    #[test]
    fn g_of_t() {
        let h = two_cycles();
        let r = NodeSet::from([0, 1]);
        let t = NodeSet::from([1, 2, 5]);
        let input = TheoremCheckInput::measure(&h, &r, &t, 1.0);
        // vol(R̄) = 15, vol(T∩R) = 2, vol(R) = 5, vol(T∩R̄) = 5
        assert_eq!(input.g_t, 15.0 * 2.0 - 5.0 * 5.0);
    }
}
