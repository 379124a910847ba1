//! Python bindings. Node sets cross the boundary as lists of dense ids;
//! reports come back as plain dicts.

use hyperlocal::cluster::DEFAULT_TOL;
use hyperlocal::harness::{f1_metrics as f1, load_hypergraph, load_labels, synth_planted as synth};
use hyperlocal::{ClusterOptions, Error, Hypergraph, NodeSet, Solver, SplittingSpec};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::StaleFlow => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Converts any serializable value into the matching Python object.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn parse_spec(spec: &str) -> PyResult<SplittingSpec> {
    spec.parse().map_err(py_err)
}

fn node_set(h: &Hypergraph, nodes: Vec<usize>) -> PyResult<NodeSet> {
    let s: NodeSet = nodes.into_iter().collect();
    h.check_set(&s).map_err(py_err)?;
    Ok(s)
}

fn opt_set(h: &Hypergraph, nodes: Option<Vec<usize>>) -> PyResult<NodeSet> {
    node_set(h, nodes.unwrap_or_default())
}

/// Hypergraph with a cardinality-based splitting function on every edge.
#[pyclass(name = "Hypergraph", frozen)]
struct PyHypergraph {
    inner: Hypergraph,
}

#[pymethods]
impl PyHypergraph {
    #[new]
    #[pyo3(signature = (n, edges, splitting = "aon:1", weights = None))]
    fn new(n: usize, edges: Vec<Vec<usize>>, splitting: &str, weights: Option<Vec<f64>>) -> PyResult<Self> {
        let spec = parse_spec(splitting)?;
        let weights = weights.unwrap_or_else(|| vec![1.0; edges.len()]);
        if weights.len() != edges.len() {
            return Err(PyValueError::new_err(format!(
                "{} weights given for {} edges",
                weights.len(),
                edges.len()
            )));
        }
        let inner = Hypergraph::weighted(n, edges, &weights, spec).map_err(py_err)?;
        Ok(PyHypergraph { inner })
    }

    #[getter]
    fn num_nodes(&self) -> usize {
        self.inner.num_nodes()
    }

    #[getter]
    fn num_edges(&self) -> usize {
        self.inner.num_edges()
    }

    fn edges(&self) -> Vec<Vec<usize>> {
        self.inner.edges().to_vec()
    }

    fn degree(&self, v: usize) -> PyResult<f64> {
        self.inner.degree(v).map_err(py_err)
    }

    fn volume(&self, s: Vec<usize>) -> PyResult<f64> {
        Ok(self.inner.volume(&node_set(&self.inner, s)?))
    }

    fn cut(&self, s: Vec<usize>) -> PyResult<f64> {
        Ok(self.inner.cut(&node_set(&self.inner, s)?))
    }

    fn conductance(&self, s: Vec<usize>) -> PyResult<f64> {
        Ok(self.inner.conductance(&node_set(&self.inner, s)?))
    }

    fn ncut(&self, s: Vec<usize>) -> PyResult<f64> {
        Ok(self.inner.ncut(&node_set(&self.inner, s)?))
    }

    /// `vol(S ∩ R) - eps vol(S \ R)`.
    fn omega(&self, r: Vec<usize>, eps: f64, s: Vec<usize>) -> PyResult<f64> {
        let h = &self.inner;
        Ok(h.omega(&node_set(h, r)?, eps, &node_set(h, s)?))
    }

    /// Localized conductance of `s` relative to `r`.
    fn hlc(&self, r: Vec<usize>, eps: f64, s: Vec<usize>) -> PyResult<f64> {
        let h = &self.inner;
        Ok(h.hlc(&node_set(h, r)?, eps, &node_set(h, s)?))
    }

    fn min_locality(&self, r: Vec<usize>) -> PyResult<f64> {
        Ok(self.inner.min_locality(&node_set(&self.inner, r)?))
    }

    fn __repr__(&self) -> String {
        format!("Hypergraph(nodes={}, edges={})", self.inner.num_nodes(), self.inner.num_edges())
    }
}

/// Minimizes localized conductance around `r`; returns the report as a dict
/// whose `best_set` is a sorted list.
#[pyfunction]
#[pyo3(signature = (h, r, eps = 1.0, seeds = None, tol = DEFAULT_TOL, solver = "local"))]
fn minimize_hlc<'py>(
    py: Python<'py>,
    h: &PyHypergraph,
    r: Vec<usize>,
    eps: f64,
    seeds: Option<Vec<usize>>,
    tol: f64,
    solver: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let g = &h.inner;
    let solver = match solver {
        "local" => Solver::StronglyLocal,
        "global" => Solver::Global,
        other => return Err(PyValueError::new_err(format!("solver must be 'local' or 'global', got {other:?}"))),
    };
    let opts = ClusterOptions {
        eps,
        seeds: opt_set(g, seeds)?,
        tol,
        solver,
        max_iterations: None,
    };
    let r = node_set(g, r)?;
    let report = py.detach(|| hyperlocal::minimize_hlc_with(g, &r, &opts)).map_err(py_err)?;
    to_py(py, &report)
}

/// One strongly-local s-t cut solve; returns `(source_side, stats)`.
#[pyfunction]
#[pyo3(signature = (h, r, eps, alpha, seeds = None))]
fn solve_strongly_local<'py>(
    py: Python<'py>,
    h: &PyHypergraph,
    r: Vec<usize>,
    eps: f64,
    alpha: f64,
    seeds: Option<Vec<usize>>,
) -> PyResult<(Vec<usize>, Bound<'py, PyAny>)> {
    let g = &h.inner;
    let (r, seeds) = (node_set(g, r)?, opt_set(g, seeds)?);
    let (set, stats) = hyperlocal::solve_strongly_local(g, &r, eps, alpha, &seeds).map_err(py_err)?;
    Ok((set.into_vec(), to_py(py, &stats)?))
}

#[pyfunction]
fn top_neighbors(h: &PyHypergraph, seeds: Vec<usize>, k: usize) -> PyResult<Vec<(usize, f64)>> {
    Ok(hyperlocal::top_neighbors_scored(&h.inner, &node_set(&h.inner, seeds)?, k))
}

#[pyfunction]
fn best_neighbors(h: &PyHypergraph, seeds: Vec<usize>, k: usize) -> PyResult<Vec<(usize, f64)>> {
    Ok(hyperlocal::best_neighbors_scored(&h.inner, &node_set(&h.inner, seeds)?, k))
}

/// Clique expansion as a 2-uniform Hypergraph; returns `(graph, discarded)`.
#[pyfunction]
#[pyo3(signature = (h, weighted = false, max_size = 50))]
fn clique_expand(h: &PyHypergraph, weighted: bool, max_size: usize) -> PyResult<(PyHypergraph, usize)> {
    let ce = hyperlocal::clique_expand(&h.inner, weighted, max_size).map_err(py_err)?;
    Ok((PyHypergraph { inner: ce.graph }, ce.discarded))
}

/// Exhaustive minimum localized conductance; `(value, witness)`.
#[pyfunction]
fn brute_min_hlc(h: &PyHypergraph, r: Vec<usize>, eps: f64) -> PyResult<(f64, Vec<usize>)> {
    let r = node_set(&h.inner, r)?;
    let (v, s) = hyperlocal::oracle::brute_min_hlc(&h.inner, &r, eps).map_err(py_err)?;
    Ok((v, s.into_vec()))
}

#[pyfunction]
fn brute_min_st_cut(h: &PyHypergraph, r: Vec<usize>, eps: f64, alpha: f64) -> PyResult<(f64, Vec<usize>)> {
    let r = node_set(&h.inner, r)?;
    let (v, s) = hyperlocal::oracle::brute_min_st_cut(&h.inner, &r, eps, alpha).map_err(py_err)?;
    Ok((v, s.into_vec()))
}

#[pyfunction]
fn brute_min_conductance(h: &PyHypergraph) -> PyResult<(f64, Vec<usize>)> {
    let (v, s) = hyperlocal::oracle::brute_min_conductance(&h.inner).map_err(py_err)?;
    Ok((v, s.into_vec()))
}

/// `(precision, recall, f1)`.
#[pyfunction]
fn f1_metrics(found: Vec<usize>, truth: Vec<usize>) -> (f64, f64, f64) {
    f1(&found.into_iter().collect(), &truth.into_iter().collect())
}

/// Planted-cluster hypergraph; returns `(hypergraph, labels)`.
#[pyfunction]
#[pyo3(signature = (n_nodes, n_clusters, cluster_size, edge_size_range, p_in, p_cross, seed = 0))]
fn synth_planted(
    n_nodes: usize,
    n_clusters: usize,
    cluster_size: usize,
    edge_size_range: (usize, usize),
    p_in: f64,
    p_cross: f64,
    seed: u64,
) -> PyResult<(PyHypergraph, BTreeMap<String, Vec<usize>>)> {
    let ds = synth(n_nodes, n_clusters, cluster_size, edge_size_range, p_in, p_cross, seed).map_err(py_err)?;
    let labels = ds.labels.into_iter().map(|(k, v)| (k, v.into_vec())).collect();
    Ok((PyHypergraph { inner: ds.hypergraph }, labels))
}

/// Loads a hypergraph file (and optionally labels); returns
/// `(hypergraph, labels, ids)` where `ids[v]` is the external id of `v`.
#[pyfunction]
#[pyo3(signature = (path, labels = None, splitting = None))]
fn load_dataset(
    path: &str,
    labels: Option<&str>,
    splitting: Option<&str>,
) -> PyResult<(PyHypergraph, BTreeMap<String, Vec<usize>>, Vec<String>)> {
    let spec = splitting.map(parse_spec).transpose()?;
    let mut ds = load_hypergraph(path, spec).map_err(py_err)?;
    if let Some(l) = labels {
        load_labels(l, &mut ds).map_err(py_err)?;
    }
    let labels = ds.labels.into_iter().map(|(k, v)| (k, v.into_vec())).collect();
    Ok((PyHypergraph { inner: ds.hypergraph }, labels, ds.id_map))
}

/// Splitting penalty table `p[0..=k/2]` for a spec string and edge size.
#[pyfunction]
fn splitting_table(spec: &str, k: usize) -> PyResult<Vec<f64>> {
    Ok(parse_spec(spec)?.build(k, 1.0).map_err(py_err)?.table().to_vec())
}

#[pymodule]
fn hyperlocal_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHypergraph>()?;
    m.add_function(wrap_pyfunction!(minimize_hlc, m)?)?;
    m.add_function(wrap_pyfunction!(solve_strongly_local, m)?)?;
    m.add_function(wrap_pyfunction!(top_neighbors, m)?)?;
    m.add_function(wrap_pyfunction!(best_neighbors, m)?)?;
    m.add_function(wrap_pyfunction!(clique_expand, m)?)?;
    m.add_function(wrap_pyfunction!(brute_min_hlc, m)?)?;
    m.add_function(wrap_pyfunction!(brute_min_st_cut, m)?)?;
    m.add_function(wrap_pyfunction!(brute_min_conductance, m)?)?;
    m.add_function(wrap_pyfunction!(f1_metrics, m)?)?;
    m.add_function(wrap_pyfunction!(synth_planted, m)?)?;
    m.add_function(wrap_pyfunction!(load_dataset, m)?)?;
    m.add_function(wrap_pyfunction!(splitting_table, m)?)?;
    m.add("DEFAULT_TOL", DEFAULT_TOL)?;
    Ok(())
}
