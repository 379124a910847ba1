//! Seed-growing evaluation protocol: sample a few seeds from a target
//! cluster, grow them into a reference set with BestNeighbors, refine with
//! localized conductance minimization, and score every method by F1.

use super::io::LabeledDataset;
use crate::baselines::{best_neighbors, clique_expand, flowseed_equivalent, top_neighbors};
use crate::cluster::{minimize_hlc_with, ClusterOptions, ClusterReport, Solver, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::nodeset::NodeSet;
use crate::splitting::SplittingSpec;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Precision, recall and F1 of `found` against `truth`.
pub fn f1_metrics(found: &NodeSet, truth: &NodeSet) -> (f64, f64, f64) {
    let hit = found.intersection(truth).len() as f64;
    let precision = if found.is_empty() { 0.0 } else { hit / found.len() as f64 };
    let recall = if truth.is_empty() { 0.0 } else { hit / truth.len() as f64 };
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    (precision, recall, f1)
}

/// Samples `ceil(frac |T|)` seeds uniformly from cluster `T` and adds the
/// top `extra` BestNeighbors of the seeds. Returns `(seeds, R)`.
pub fn grow_seed_protocol<G: Rng + ?Sized>(
    ds: &LabeledDataset,
    cluster: &str,
    frac: f64,
    extra: usize,
    rng: &mut G,
) -> Result<(NodeSet, NodeSet)> {
    if !(frac > 0.0 && frac <= 1.0) {
        return Err(Error::InvalidParameter(format!("seed fraction must be in (0, 1], got {frac}")));
    }
    let t = ds.cluster(cluster)?;
    let count = ((frac * t.len() as f64).ceil() as usize).clamp(1, t.len());
    let members = t.as_slice();
    let seeds: NodeSet = sample(rng, members.len(), count).into_iter().map(|i| members[i]).collect();
    let grown = best_neighbors(&ds.hypergraph, &seeds, extra);
    let r = seeds.union(&grown.into_iter().collect());
    Ok((seeds, r))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProtocolParams {
    pub seed_frac: f64,
    /// The reference set gets `grow * |T|` extra nodes.
    pub grow: f64,
    pub eps: f64,
    pub rng_seed: u64,
    /// Also run graph localized conductance on both clique expansions.
    pub clique_baselines: bool,
    pub solver: Solver,
}

impl Default for ProtocolParams {
    fn default() -> Self {
        ProtocolParams {
            seed_frac: 0.05,
            grow: 2.0,
            eps: 1.0,
            rng_seed: 0,
            clique_baselines: false,
            solver: Solver::StronglyLocal,
        }
    }
}

impl ProtocolParams {
    pub fn extra(&self, target: usize) -> usize {
        (self.grow * target as f64).round() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MethodScore {
    pub size: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl MethodScore {
    pub fn of(found: &NodeSet, truth: &NodeSet) -> Self {
        let (precision, recall, f1) = f1_metrics(found, truth);
        MethodScore {
            size: found.len(),
            precision,
            recall,
            f1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scores {
    pub hyperlocal: MethodScore,
    pub best_neighbors: MethodScore,
    pub top_neighbors: MethodScore,
    pub reference: MethodScore,
    pub clique_unweighted: Option<MethodScore>,
    pub clique_weighted: Option<MethodScore>,
}

/// One protocol run, as emitted in line-delimited JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolRecord {
    pub cluster: String,
    pub splitting: String,
    pub params: ProtocolParams,
    pub target_size: usize,
    pub seeds: NodeSet,
    pub reference_size: usize,
    pub scores: Scores,
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
    pub runtime_ms: f64,
    pub warnings: Vec<String>,
}

/// Seeds plus the top `|T| - |seeds|` ranked nodes, so baselines return
/// exactly as many nodes as the target has.
fn baseline_output(seeds: &NodeSet, ranked: Vec<usize>) -> NodeSet {
    seeds.union(&ranked.into_iter().collect())
}

/// Runs the protocol once on `cluster` and returns the record along with
/// the full report of the localized conductance run.
pub fn run_protocol(
    ds: &LabeledDataset,
    cluster: &str,
    params: &ProtocolParams,
) -> Result<(ProtocolRecord, ClusterReport)> {
    let t = ds.cluster(cluster)?.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
    let (seeds, r) = grow_seed_protocol(ds, cluster, params.seed_frac, params.extra(t.len()), &mut rng)?;
    let h = &ds.hypergraph;
    let opts = ClusterOptions {
        eps: params.eps,
        seeds: seeds.clone(),
        tol: DEFAULT_TOL,
        solver: params.solver,
        ..ClusterOptions::default()
    };
    let start = Instant::now();
    let report = minimize_hlc_with(h, &r, &opts)?;
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;

    let k = t.len().saturating_sub(seeds.len());
    let bn = baseline_output(&seeds, best_neighbors(h, &seeds, k));
    let tn = baseline_output(&seeds, top_neighbors(h, &seeds, k));
    let (clique_unweighted, clique_weighted) = if params.clique_baselines {
        let run = |weighted: bool| -> Result<MethodScore> {
            let g = clique_expand(h, weighted, 50)?.graph;
            let rep = flowseed_equivalent(&g, &r, params.eps, &seeds, DEFAULT_TOL)?;
            Ok(MethodScore::of(&rep.best_set, &t))
        };
        (Some(run(false)?), Some(run(true)?))
    } else {
        (None, None)
    };
    let record = ProtocolRecord {
        cluster: cluster.to_string(),
        splitting: ds.spec.to_string(),
        params: *params,
        target_size: t.len(),
        seeds,
        reference_size: r.len(),
        scores: Scores {
            hyperlocal: MethodScore::of(&report.best_set, &t),
            best_neighbors: MethodScore::of(&bn, &t),
            top_neighbors: MethodScore::of(&tn, &t),
            reference: MethodScore::of(&r, &t),
            clique_unweighted,
            clique_weighted,
        },
        objective: report.objective,
        iterations: report.iterations,
        converged: report.converged,
        runtime_ms,
        warnings: report.warnings.clone(),
    };
    Ok((record, report))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub delta: f64,
    pub score: MethodScore,
    pub objective: f64,
}

/// Reruns the protocol with delta-linear splitting for each `delta`, using
/// the same seeds and reference set every time. Rows are sorted by delta.
pub fn delta_sweep(
    ds: &LabeledDataset,
    cluster: &str,
    deltas: &[f64],
    params: &ProtocolParams,
) -> Result<Vec<SweepRow>> {
    let mut deltas = deltas.to_vec();
    deltas.sort_by(f64::total_cmp);
    deltas.dedup();
    let t = ds.cluster(cluster)?.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
    let (seeds, r) = grow_seed_protocol(ds, cluster, params.seed_frac, params.extra(t.len()), &mut rng)?;
    let opts = ClusterOptions {
        eps: params.eps,
        seeds,
        tol: DEFAULT_TOL,
        solver: params.solver,
        ..ClusterOptions::default()
    };
    deltas
        .into_iter()
        .map(|delta| {
            let d = ds.with_spec(SplittingSpec::delta_linear(delta))?;
            let report = minimize_hlc_with(&d.hypergraph, &r, &opts)?;
            Ok(SweepRow {
                delta,
                score: MethodScore::of(&report.best_set, &t),
                objective: report.objective,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::synth::synth_planted;

    #[test]
    fn f1_cases() {
        let t = NodeSet::from([1, 2, 3]);
        assert_eq!(f1_metrics(&t, &t), (1.0, 1.0, 1.0));
        assert_eq!(f1_metrics(&NodeSet::from([7, 8]), &t), (0.0, 0.0, 0.0));
        assert_eq!(f1_metrics(&NodeSet::new(), &t), (0.0, 0.0, 0.0));
        let (p, r, f) = f1_metrics(&NodeSet::from([1, 2, 8, 9]), &NodeSet::from([1, 2]));
        assert_eq!((p, r), (0.5, 1.0));
        assert!((f - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn full_seed_fraction_is_the_target() {
        let ds = synth_planted(100, 2, 30, (2, 4), 0.3, 0.01, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let (seeds, r) = grow_seed_protocol(&ds, "cluster0", 1.0, 0, &mut rng).unwrap();
        assert_eq!(&seeds, &ds.labels["cluster0"]);
        assert_eq!(seeds, r);
    }

    #[test]
    fn protocol_shape() {
        let ds = synth_planted(300, 3, 60, (2, 4), 0.2, 0.005, 3).unwrap();
        let t = &ds.labels["cluster1"];
        for frac in [0.05, 0.02] {
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            let (seeds, r) = grow_seed_protocol(&ds, "cluster1", frac, 2 * t.len(), &mut rng).unwrap();
            assert_eq!(seeds.len(), (frac * 60.0_f64).ceil() as usize);
            assert!(seeds.is_subset(t));
            assert!(seeds.is_subset(&r));
            assert!(r.len() <= seeds.len() + 2 * t.len());
        }
        assert!(grow_seed_protocol(&ds, "nope", 0.05, 1, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
        assert!(grow_seed_protocol(&ds, "cluster1", 0.0, 1, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
    }

    #[test]
    fn protocol_run_is_reproducible() {
        let ds = synth_planted(300, 3, 60, (2, 4), 0.2, 0.005, 4).unwrap();
        let params = ProtocolParams {
            rng_seed: 17,
            clique_baselines: true,
            ..ProtocolParams::default()
        };
        let (a, rep) = run_protocol(&ds, "cluster2", &params).unwrap();
        let (b, _) = run_protocol(&ds, "cluster2", &params).unwrap();
        assert_eq!(a.seeds, b.seeds);
        assert_eq!(a.scores, b.scores);
        assert!(a.seeds.is_subset(&rep.best_set));
        assert!(a.scores.best_neighbors.size <= 60);
        assert!(a.scores.top_neighbors.size <= 60);
        assert!(a.scores.clique_weighted.is_some());
    }

    #[test]
    fn sweep_rows_are_sorted() {
        let ds = synth_planted(200, 2, 50, (2, 6), 0.2, 0.01, 5).unwrap();
        let params = ProtocolParams::default();
        let rows = delta_sweep(&ds, "cluster0", &[5.0, 1.0, 2.0], &params).unwrap();
        assert_eq!(rows.iter().map(|r| r.delta).collect::<Vec<_>>(), vec![1.0, 2.0, 5.0]);
        assert_eq!(delta_sweep(&ds, "cluster0", &[3.0], &params).unwrap().len(), 1);
    }
}
