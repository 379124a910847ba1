use crate::output::{emit, f3, CliError, CliResult, Table};
use crate::{
    CheckArgs, Cli, ClusterArgs, Command, ExpandArgs, Input, OracleArgs, Protocol, RankArgs, SweepArgs, SynthArgs,
};
use hyperlocal::cluster::DEFAULT_TOL;
use hyperlocal::harness::theorems::CheckStatus;
use hyperlocal::harness::{
    check_theorems, delta_sweep, generate, grow_seed_protocol, load_hypergraph, load_labels, run_protocol,
    save_hypergraph, save_labels, LabeledDataset, PlantedConfig, ProtocolParams, TheoremCheckInput,
};
use hyperlocal::oracle::{brute_min_conductance, brute_min_hlc, brute_min_st_cut};
use hyperlocal::{
    best_neighbors_scored, clique_expand, minimize_hlc, minimize_hlc_with, solve_strongly_local,
    top_neighbors_scored, ClusterOptions, ClusterReport, NodeSet, Solver, SplittingSpec,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::time::Instant;

pub fn run(cli: &Cli) -> CliResult<()> {
    let quiet = cli.quiet;
    match &cli.command {
        Command::Cluster(a) => cluster(a, quiet),
        Command::Topn(a) => rank(a, false, quiet),
        Command::Bestn(a) => rank(a, true, quiet),
        Command::Expand(a) => expand(a, quiet),
        Command::Oracle(a) => oracle(a, quiet),
        Command::Synth(a) => synth(a, quiet),
        Command::Sweep(a) => sweep(a, quiet),
        Command::CheckTheorems(a) => check(a, quiet),
    }
}

fn spec_of(input: &Input) -> CliResult<Option<SplittingSpec>> {
    match (&input.splitting, input.delta) {
        (Some(s), _) => Ok(Some(s.parse()?)),
        (None, Some(d)) => {
            let spec = SplittingSpec::delta_linear(d);
            spec.build(2, 1.0)?;
            Ok(Some(spec))
        }
        (None, None) => Ok(None),
    }
}

fn load(input: &Input) -> CliResult<LabeledDataset> {
    let ds = load_hypergraph(&input.hypergraph, spec_of(input)?)?;
    if ds.hypergraph.num_edges() == 0 {
        return Err(CliError::Input(format!("{} has no edges", input.hypergraph.display())));
    }
    Ok(ds)
}

fn load_with_labels(input: &Input, labels: &std::path::Path) -> CliResult<LabeledDataset> {
    let mut ds = load(input)?;
    load_labels(labels, &mut ds)?;
    Ok(ds)
}

/// Parses comma or whitespace separated external ids.
fn parse_ids(ds: &LabeledDataset, text: &str) -> CliResult<NodeSet> {
    let index = ds.index();
    let mut set = NodeSet::new();
    for tok in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let v = index
            .get(tok)
            .ok_or_else(|| CliError::Input(format!("unknown node id {tok:?}")))?;
        set.insert(*v);
    }
    if set.is_empty() {
        return Err(CliError::Input("empty node list".into()));
    }
    Ok(set)
}

fn external<'a>(ds: &'a LabeledDataset, set: &NodeSet) -> Vec<&'a str> {
    set.iter().map(|v| ds.id_map[v].as_str()).collect()
}

fn targets(ds: &LabeledDataset, requested: &[String]) -> CliResult<Vec<String>> {
    if requested.is_empty() {
        if ds.labels.is_empty() {
            return Err(CliError::Input("labels file defines no clusters".into()));
        }
        return Ok(ds.labels.keys().cloned().collect());
    }
    for name in requested {
        ds.cluster(name)?;
    }
    Ok(requested.to_vec())
}

fn params(p: &Protocol, eps: f64, clique_baselines: bool, solver: Solver, trial: u64) -> CliResult<ProtocolParams> {
    if p.trials == 0 {
        return Err(CliError::Input("--trials must be at least 1".into()));
    }
    if !(p.grow >= 0.0 && p.grow.is_finite()) {
        return Err(CliError::Input(format!("--grow must be nonnegative, got {}", p.grow)));
    }
    Ok(ProtocolParams {
        seed_frac: p.seed_frac,
        grow: p.grow,
        eps,
        rng_seed: p.rng_seed + trial,
        clique_baselines,
        solver,
    })
}

fn emit_rounds(report: &ClusterReport, context: &Map<String, Value>) -> CliResult<()> {
    for (i, solve) in report.solves.iter().enumerate() {
        for round in &solve.rounds {
            let mut rec = context.clone();
            rec.insert("record".into(), json!("round"));
            rec.insert("solve".into(), json!(i + 1));
            rec.insert("alpha".into(), json!(solve.alpha));
            if let Value::Object(fields) = serde_json::to_value(round)? {
                rec.extend(fields);
            }
            emit(&Value::Object(rec))?;
        }
    }
    Ok(())
}

fn cluster(a: &ClusterArgs, quiet: bool) -> CliResult<()> {
    let solver = if a.global { Solver::Global } else { Solver::StronglyLocal };
    if let Some(reference) = &a.reference {
        return cluster_reference(a, reference, solver, quiet);
    }
    let labels = a
        .labels
        .as_ref()
        .ok_or_else(|| CliError::Input("either --reference or --labels is required".into()))?;
    let ds = load_with_labels(&a.input, labels)?;
    let names = targets(&ds, &a.cluster)?;
    let mut table = Table::new(&["cluster", "trial", "|T|", "|R|", "|S|", "HL f1", "BN f1", "TN f1", "R f1", "solves", "ms"]);
    let mut sums = [0.0; 4];
    let mut runs = 0.0;
    for name in &names {
        for trial in 0..a.protocol.trials {
            let p = params(&a.protocol, a.eps, a.clique_baselines, solver, trial)?;
            let (rec, report) = run_protocol(&ds, name, &p)?;
            let mut obj = match serde_json::to_value(&rec)? {
                Value::Object(m) => m,
                _ => unreachable!("records serialize to objects"),
            };
            obj.insert("seeds".into(), json!(external(&ds, &rec.seeds)));
            let mut out = Map::new();
            out.insert("command".into(), json!("cluster"));
            out.insert("record".into(), json!("run"));
            out.insert("trial".into(), json!(trial));
            out.extend(obj);
            out.insert("found".into(), json!(external(&ds, &report.best_set)));
            emit(&Value::Object(out))?;
            if a.trace {
                let mut ctx = Map::new();
                ctx.insert("command".into(), json!("cluster"));
                ctx.insert("cluster".into(), json!(name));
                ctx.insert("trial".into(), json!(trial));
                emit_rounds(&report, &ctx)?;
            }
            let s = &rec.scores;
            let f1s = [s.hyperlocal.f1, s.best_neighbors.f1, s.top_neighbors.f1, s.reference.f1];
            for (acc, f) in sums.iter_mut().zip(f1s) {
                *acc += f;
            }
            runs += 1.0;
            table.row(vec![
                name.clone(),
                trial.to_string(),
                rec.target_size.to_string(),
                rec.reference_size.to_string(),
                s.hyperlocal.size.to_string(),
                f3(f1s[0]),
                f3(f1s[1]),
                f3(f1s[2]),
                f3(f1s[3]),
                rec.iterations.to_string(),
                format!("{:.1}", rec.runtime_ms),
            ]);
        }
    }
    let mut mean = vec!["mean".to_string(), String::new(), String::new(), String::new(), String::new()];
    mean.extend(sums.iter().map(|s| f3(s / runs)));
    mean.extend([String::new(), String::new()]);
    table.row(mean);
    table.print(quiet);
    Ok(())
}

fn cluster_reference(a: &ClusterArgs, reference: &str, solver: Solver, quiet: bool) -> CliResult<()> {
    let ds = load(&a.input)?;
    let h = &ds.hypergraph;
    let r = parse_ids(&ds, reference)?;
    let seeds = match &a.seeds {
        Some(s) => parse_ids(&ds, s)?,
        None => NodeSet::new(),
    };
    let opts = ClusterOptions {
        eps: a.eps,
        seeds: seeds.clone(),
        tol: DEFAULT_TOL,
        solver,
        max_iterations: None,
    };
    let start = Instant::now();
    let report = minimize_hlc_with(h, &r, &opts)?;
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    let s = &report.best_set;
    emit(&json!({
        "command": "cluster",
        "record": "run",
        "splitting": ds.spec.to_string(),
        "eps": a.eps,
        "reference_size": r.len(),
        "seeds": external(&ds, &seeds),
        "found": external(&ds, s),
        "size": s.len(),
        "objective": report.objective,
        "cut": h.cut(s),
        "conductance": h.conductance(s),
        "iterations": report.iterations,
        "converged": report.converged,
        "anchored": report.anchored,
        "stripped_isolated": report.stripped_isolated,
        "trace": report.trace,
        "runtime_ms": runtime_ms,
        "warnings": report.warnings,
    }))?;
    if a.trace {
        let mut ctx = Map::new();
        ctx.insert("command".into(), json!("cluster"));
        emit_rounds(&report, &ctx)?;
    }
    let mut table = Table::new(&["|R|", "|S|", "HLC(R)", "HLC(S)", "cond(S)", "solves", "ms"]);
    table.row(vec![
        r.len().to_string(),
        s.len().to_string(),
        format!("{:.6}", report.trace[0].alpha),
        format!("{:.6}", report.objective),
        format!("{:.6}", h.conductance(s)),
        report.iterations.to_string(),
        format!("{runtime_ms:.1}"),
    ]);
    table.print(quiet);
    Ok(())
}

fn rank(a: &RankArgs, best: bool, quiet: bool) -> CliResult<()> {
    let ds = load(&a.input)?;
    let seeds = parse_ids(&ds, &a.seeds)?;
    let ranked = if best {
        best_neighbors_scored(&ds.hypergraph, &seeds, a.k)
    } else {
        top_neighbors_scored(&ds.hypergraph, &seeds, a.k)
    };
    let name = if best { "bestn" } else { "topn" };
    let mut table = Table::new(&["rank", "node", "score"]);
    for (i, &(v, score)) in ranked.iter().enumerate() {
        table.row(vec![(i + 1).to_string(), ds.id_map[v].clone(), format!("{score:.4}")]);
    }
    emit(&json!({
        "command": name,
        "seeds": external(&ds, &seeds),
        "k": a.k,
        "ranked": ranked.iter().map(|&(v, score)| json!({"node": ds.id_map[v], "score": score})).collect::<Vec<_>>(),
    }))?;
    table.print(quiet);
    Ok(())
}

fn expand(a: &ExpandArgs, quiet: bool) -> CliResult<()> {
    let ds = load(&a.input)?;
    let ce = clique_expand(&ds.hypergraph, a.weighted, a.max_size)?;
    let g = ce.graph;
    let weights: Vec<f64> = (0..g.num_edges()).map(|e| g.splitting(e).eval(1)).collect();
    let mut out = LabeledDataset::from_hypergraph(g, weights, SplittingSpec::AllOrNothing { weight: 1.0 });
    out.id_map = ds.id_map.clone();
    save_hypergraph(&out, &a.output)?;
    emit(&json!({
        "command": "expand",
        "weighted": a.weighted,
        "max_size": a.max_size,
        "nodes": out.hypergraph.num_nodes(),
        "hyperedges": ds.hypergraph.num_edges(),
        "edges": out.hypergraph.num_edges(),
        "discarded": ce.discarded,
        "output": a.output.display().to_string(),
    }))?;
    if !quiet {
        eprintln!(
            "{} hyperedges -> {} weighted pairs ({} discarded), written to {}",
            ds.hypergraph.num_edges(),
            out.hypergraph.num_edges(),
            ce.discarded,
            a.output.display()
        );
    }
    Ok(())
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

fn oracle(a: &OracleArgs, quiet: bool) -> CliResult<()> {
    let ds = load(&a.input)?;
    let h = &ds.hypergraph;
    let mut rec = Map::new();
    rec.insert("command".into(), json!("oracle"));
    let mut table = Table::new(&["objective", "oracle", "solver", "witness"]);
    let mut mismatches = Vec::new();

    if a.conductance {
        let (value, witness) = brute_min_conductance(h)?;
        rec.insert("min_conductance".into(), json!({"value": value, "witness": external(&ds, &witness)}));
        table.row(vec!["conductance".into(), format!("{value:.9}"), "-".into(), external(&ds, &witness).join(" ")]);
    }
    if let Some(reference) = &a.reference {
        let r = parse_ids(&ds, reference)?;
        let (value, witness) = brute_min_hlc(h, &r, a.eps)?;
        let mut entry = json!({"value": value, "witness": external(&ds, &witness)});
        let mut solver_cell = "-".to_string();
        if a.verify {
            let report = minimize_hlc(h, &r, a.eps, &NodeSet::new(), DEFAULT_TOL)?;
            entry["solver"] = json!(report.objective);
            solver_cell = format!("{:.9}", report.objective);
            if !close(report.objective, value) {
                mismatches.push(format!("localized conductance {} vs oracle {value}", report.objective));
            }
        }
        rec.insert("min_hlc".into(), entry);
        table.row(vec!["localized conductance".into(), format!("{value:.9}"), solver_cell, external(&ds, &witness).join(" ")]);

        if let Some(alpha) = a.alpha {
            let (value, witness) = brute_min_st_cut(h, &r, a.eps, alpha)?;
            let mut entry = json!({"alpha": alpha, "value": value, "witness": external(&ds, &witness)});
            let mut solver_cell = "-".to_string();
            if a.verify {
                let (_, stats) = solve_strongly_local(h, &r, a.eps, alpha, &NodeSet::new())?;
                entry["solver"] = json!(stats.cut_value);
                solver_cell = format!("{:.9}", stats.cut_value);
                if !close(stats.cut_value, value) {
                    mismatches.push(format!("s-t cut {} vs oracle {value}", stats.cut_value));
                }
            }
            rec.insert("min_st_cut".into(), entry);
            table.row(vec![format!("s-t cut at {alpha}"), format!("{value:.9}"), solver_cell, external(&ds, &witness).join(" ")]);
        }
    } else if a.alpha.is_some() || !a.conductance {
        return Err(CliError::Input("--reference is required unless only --conductance is requested".into()));
    }
    rec.insert("verified".into(), json!(a.verify && mismatches.is_empty()));
    emit(&Value::Object(rec))?;
    table.print(quiet);
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(CliError::Assertion(mismatches.join("; ")))
    }
}

fn parse_range(text: &str, flag: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Input(format!("{flag} expects lo-hi, got {text:?}"));
    let (lo, hi) = text.split_once('-').ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn synth(a: &SynthArgs, quiet: bool) -> CliResult<()> {
    let cfg = PlantedConfig {
        n_nodes: a.nodes,
        cluster_sizes: vec![a.cluster_size; a.clusters],
        edge_size: parse_range(&a.edge_size, "--edge-size")?,
        p_in: a.p_in,
        p_cross: a.p_cross,
        large_edges_per_cluster: a.large_edges,
        large_size: parse_range(&a.large_size, "--large-size")?,
        large_purity: a.large_purity,
        spec: a.splitting.parse()?,
        seed: a.seed,
    };
    let ds = generate(&cfg)?;
    save_hypergraph(&ds, &a.output)?;
    save_labels(&ds, &a.labels_output)?;
    let h = &ds.hypergraph;
    let conductance: BTreeMap<&str, f64> = ds.labels.iter().map(|(k, t)| (k.as_str(), h.conductance(t))).collect();
    emit(&json!({
        "command": "synth",
        "config": cfg,
        "nodes": h.num_nodes(),
        "edges": h.num_edges(),
        "conductance": conductance,
        "output": a.output.display().to_string(),
        "labels_output": a.labels_output.display().to_string(),
    }))?;
    let mut table = Table::new(&["cluster", "size", "volume", "cut", "conductance"]);
    for (name, t) in &ds.labels {
        table.row(vec![
            name.clone(),
            t.len().to_string(),
            format!("{:.0}", h.volume(t)),
            format!("{:.1}", h.cut(t)),
            format!("{:.4}", h.conductance(t)),
        ]);
    }
    table.print(quiet);
    Ok(())
}

fn parse_deltas(text: &str) -> CliResult<Vec<f64>> {
    let deltas: Vec<f64> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|d| d.is_finite() && *d >= 1.0)
                .ok_or_else(|| CliError::Input(format!("bad delta {t:?}; deltas must be at least 1")))
        })
        .collect::<CliResult<_>>()?;
    if deltas.is_empty() {
        return Err(CliError::Input("no deltas given".into()));
    }
    Ok(deltas)
}

fn sweep(a: &SweepArgs, quiet: bool) -> CliResult<()> {
    let deltas = parse_deltas(&a.deltas)?;
    let input = Input {
        hypergraph: a.hypergraph.clone(),
        splitting: None,
        delta: None,
    };
    let ds = load_with_labels(&input, &a.labels)?;
    let names = targets(&ds, &a.cluster)?;
    let mut sums: BTreeMap<u64, (f64, f64, usize)> = BTreeMap::new();
    for name in &names {
        for trial in 0..a.protocol.trials {
            let p = params(&a.protocol, a.eps, false, Solver::StronglyLocal, trial)?;
            for row in delta_sweep(&ds, name, &deltas, &p)? {
                emit(&json!({
                    "command": "sweep",
                    "cluster": name,
                    "trial": trial,
                    "rng_seed": p.rng_seed,
                    "delta": row.delta,
                    "size": row.score.size,
                    "precision": row.score.precision,
                    "recall": row.score.recall,
                    "f1": row.score.f1,
                    "objective": row.objective,
                }))?;
                let acc = sums.entry(row.delta.to_bits()).or_insert((row.delta, 0.0, 0));
                acc.1 += row.score.f1;
                acc.2 += 1;
            }
        }
    }
    let mut rows: Vec<_> = sums.into_values().collect();
    rows.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut table = Table::new(&["delta", "runs", "mean f1"]);
    for (delta, total, count) in rows {
        table.row(vec![delta.to_string(), count.to_string(), f3(total / count as f64)]);
    }
    table.print(quiet);
    Ok(())
}

fn check(a: &CheckArgs, quiet: bool) -> CliResult<()> {
    let ds = load_with_labels(&a.input, &a.labels)?;
    let h = &ds.hypergraph;
    let t = ds.cluster(&a.cluster)?.clone();
    let mut table = Table::new(&["trial", "check", "status", "value", "bound", "slack"]);
    let mut violations = 0;
    let trials = if a.reference.is_some() { 1 } else { a.protocol.trials };
    for trial in 0..trials {
        let r = match &a.reference {
            Some(text) => parse_ids(&ds, text)?,
            None => {
                let mut rng = ChaCha8Rng::seed_from_u64(a.protocol.rng_seed + trial);
                let extra = (a.protocol.grow * t.len() as f64).round() as usize;
                grow_seed_protocol(&ds, &a.cluster, a.protocol.seed_frac, extra, &mut rng)?.1
            }
        };
        let r: NodeSet = r.iter().filter(|&v| !h.is_isolated(v)).collect();
        let eps = a.eps.unwrap_or_else(|| h.min_locality(&r));
        let report = minimize_hlc(h, &r, eps, &NodeSet::new(), DEFAULT_TOL)?;
        let input = TheoremCheckInput::measure(h, &r, &t, eps);
        let ledger = check_theorems(h, &report, &input);
        violations += ledger.violations();
        for c in &ledger.checks {
            let status = match &c.status {
                CheckStatus::Pass => "pass".to_string(),
                CheckStatus::Fail => "FAIL".to_string(),
                CheckStatus::Skipped(why) => format!("skipped ({why})"),
            };
            table.row(vec![
                trial.to_string(),
                c.name.clone(),
                status,
                format!("{:.6}", c.value),
                format!("{:.6}", c.bound),
                format!("{:.3e}", c.slack),
            ]);
        }
        emit(&json!({
            "command": "check-theorems",
            "cluster": a.cluster,
            "trial": trial,
            "reference": external(&ds, &r),
            "found": external(&ds, &report.best_set),
            "objective": report.objective,
            "iterations": report.iterations,
            "gamma": input.gamma,
            "beta": input.beta,
            "mu": input.mu,
            "eps": eps,
            "eps0": input.eps0,
            "g_t": input.g_t,
            "checks": ledger.checks,
            "violations": ledger.violations(),
        }))?;
    }
    table.print(quiet);
    if violations > 0 {
        return Err(CliError::Assertion(format!("{violations} bound violations")));
    }
    Ok(())
}
