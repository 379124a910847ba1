//! Strongly-local hypergraph clustering by localized ratio-cut minimization.
//!
//! The entry point is [`minimize_hlc`], which repeatedly solves hypergraph
//! minimum s-t cut problems (reduced to directed max-flow with a
//! delta-linear gadget per hyperedge) on a local hypergraph that grows only
//! as far as the cut requires.

pub mod baselines;
pub mod cluster;
pub mod error;
pub mod harness;
pub mod hypergraph;
pub mod local;
pub mod maxflow;
pub mod nodeset;
pub mod oracle;
pub mod reduction;
pub mod splitting;

pub use baselines::{
    best_neighbors, best_neighbors_scored, clique_expand, flowseed_equivalent, top_neighbors, top_neighbors_scored,
};
pub use cluster::{minimize_hlc, minimize_hlc_with, ClusterOptions, ClusterReport, Solver, TraceEntry};
pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
pub use local::{solve_global, solve_strongly_local, LocalHypergraph, RoundStats, SolveStats};
pub use maxflow::FlowNetwork;
pub use nodeset::NodeSet;
pub use splitting::{CardinalitySplitting, SplittingSpec};
