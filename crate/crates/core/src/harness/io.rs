//! Text formats.
//!
//! Hypergraph file: one hyperedge per line of whitespace-separated external
//! node ids, optionally led by a `w=<float>` weight token. Lines starting
//! with `#` are comments, except two optional headers written by
//! [`save_hypergraph`] so that a reload is exact:
//!
//! ```text
//! #! nodes: a b c d
//! #! splitting: dlt:1
//! ```
//!
//! Labels file: `name: id id id` per line.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::nodeset::NodeSet;
use crate::splitting::SplittingSpec;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Clone)]
pub struct LabeledDataset {
    pub hypergraph: Hypergraph,
    pub labels: BTreeMap<String, NodeSet>,
    /// External id of every dense node id.
    pub id_map: Vec<String>,
    /// Weight of every retained edge; the splitting is `spec` scaled by it.
    pub edge_weights: Vec<f64>,
    pub spec: SplittingSpec,
    /// Edges dropped at load time for having fewer than two distinct nodes.
    pub dropped_edges: usize,
}

impl PartialEq for LabeledDataset {
    fn eq(&self, other: &Self) -> bool {
        let h = &self.hypergraph;
        let g = &other.hypergraph;
        h.num_nodes() == g.num_nodes()
            && h.edges() == g.edges()
            && (0..h.num_edges()).all(|e| h.splitting(e) == g.splitting(e))
            && self.labels == other.labels
            && self.id_map == other.id_map
            && self.edge_weights == other.edge_weights
            && self.spec == other.spec
    }
}

impl LabeledDataset {
    /// Wraps a hypergraph whose external ids are its dense ids.
    pub fn from_hypergraph(h: Hypergraph, edge_weights: Vec<f64>, spec: SplittingSpec) -> Self {
        LabeledDataset {
            id_map: (0..h.num_nodes()).map(|v| v.to_string()).collect(),
            hypergraph: h,
            labels: BTreeMap::new(),
            edge_weights,
            spec,
            dropped_edges: 0,
        }
    }

    /// Dense id lookup.
    pub fn index(&self) -> HashMap<&str, usize> {
        self.id_map.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect()
    }

    pub fn cluster(&self, name: &str) -> Result<&NodeSet> {
        let t = self.labels.get(name).ok_or_else(|| Error::UnknownCluster(name.to_string()))?;
        if t.is_empty() {
            return Err(Error::EmptyCluster(name.to_string()));
        }
        Ok(t)
    }

    /// The same dataset under a different splitting family.
    pub fn with_spec(&self, spec: SplittingSpec) -> Result<Self> {
        let hypergraph = self.hypergraph.resplit(|e, k| spec.build(k, self.edge_weights[e]))?;
        Ok(LabeledDataset {
            hypergraph,
            spec,
            ..self.clone()
        })
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses hypergraph text. `spec` overrides a `#! splitting:` header; with
/// neither, every edge is all-or-nothing with its own weight.
pub fn parse_hypergraph(text: &str, spec: Option<SplittingSpec>) -> Result<LabeledDataset> {
    let mut ids: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut intern = |tok: &str, ids: &mut Vec<String>| -> usize {
        if let Some(&i) = index.get(tok) {
            return i;
        }
        ids.push(tok.to_string());
        index.insert(tok.to_string(), ids.len() - 1);
        ids.len() - 1
    };
    let mut header_spec = None;
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    let mut dropped = 0;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix("#!") {
            let rest = rest.trim();
            if let Some(list) = rest.strip_prefix("nodes:") {
                for tok in list.split_whitespace() {
                    intern(tok, &mut ids);
                }
            } else if let Some(s) = rest.strip_prefix("splitting:") {
                header_spec = Some(
                    s.trim()
                        .parse::<SplittingSpec>()
                        .map_err(|e| parse_err(lineno, e.to_string()))?,
                );
            } else {
                return Err(parse_err(lineno, format!("unknown header {rest:?}")));
            }
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace().peekable();
        let mut w = 1.0;
        if let Some(ws) = toks.peek().and_then(|t| t.strip_prefix("w=")) {
            w = ws
                .parse::<f64>()
                .ok()
                .filter(|w| w.is_finite() && *w > 0.0)
                .ok_or_else(|| parse_err(lineno, format!("bad edge weight {ws:?}")))?;
            toks.next();
        }
        let mut e: Vec<usize> = toks.map(|t| intern(t, &mut ids)).collect();
        e.sort_unstable();
        e.dedup();
        if e.len() < 2 {
            dropped += 1;
            continue;
        }
        edges.push(e);
        weights.push(w);
    }
    if dropped > 0 {
        log::warn!("dropped {dropped} edges with fewer than two distinct nodes");
    }
    let spec = spec.or(header_spec).unwrap_or(SplittingSpec::AllOrNothing { weight: 1.0 });
    let hypergraph = Hypergraph::weighted(ids.len(), edges, &weights, spec)?;
    Ok(LabeledDataset {
        hypergraph,
        labels: BTreeMap::new(),
        id_map: ids,
        edge_weights: weights,
        spec,
        dropped_edges: dropped,
    })
}

pub fn load_hypergraph(path: impl AsRef<Path>, spec: Option<SplittingSpec>) -> Result<LabeledDataset> {
    parse_hypergraph(&std::fs::read_to_string(path)?, spec)
}

/// Parses a labels file against `ds` and stores the clusters in it. A name
/// given on several lines collects the union.
pub fn parse_labels(text: &str, ds: &mut LabeledDataset) -> Result<()> {
    let mut labels: BTreeMap<String, NodeSet> = BTreeMap::new();
    {
        let index = ds.index();
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, rest) = line
                .split_once(':')
                .ok_or_else(|| parse_err(lineno, "expected `name: id id ...`"))?;
            let name = name.trim();
            if name.is_empty() {
                return Err(parse_err(lineno, "empty cluster name"));
            }
            let entry = labels.entry(name.to_string()).or_default();
            for tok in rest.split_whitespace() {
                let &v = index
                    .get(tok)
                    .ok_or_else(|| parse_err(lineno, format!("unknown node {tok:?}")))?;
                entry.insert(v);
            }
        }
    }
    ds.labels.extend(labels);
    Ok(())
}

pub fn load_labels(path: impl AsRef<Path>, ds: &mut LabeledDataset) -> Result<()> {
    parse_labels(&std::fs::read_to_string(path)?, ds)
}

pub fn hypergraph_to_string(ds: &LabeledDataset) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "#! nodes: {}", ds.id_map.join(" "));
    let _ = writeln!(out, "#! splitting: {}", ds.spec);
    for (e, members) in ds.hypergraph.edges().iter().enumerate() {
        let w = ds.edge_weights[e];
        if w != 1.0 {
            let _ = write!(out, "w={w} ");
        }
        let names: Vec<&str> = members.iter().map(|&v| ds.id_map[v].as_str()).collect();
        let _ = writeln!(out, "{}", names.join(" "));
    }
    out
}

pub fn labels_to_string(ds: &LabeledDataset) -> String {
    let mut out = String::new();
    for (name, set) in &ds.labels {
        let names: Vec<&str> = set.iter().map(|v| ds.id_map[v].as_str()).collect();
        let _ = writeln!(out, "{name}: {}", names.join(" "));
    }
    out
}

pub fn save_hypergraph(ds: &LabeledDataset, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, hypergraph_to_string(ds))?;
    Ok(())
}

pub fn save_labels(ds: &LabeledDataset, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, labels_to_string(ds))?;
    Ok(())
}
