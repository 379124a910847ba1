//! Data loading, synthetic generation, the seed-growing evaluation protocol
//! and bound checking.

pub mod io;
pub mod protocol;
pub mod synth;
pub mod theorems;

pub use io::{load_hypergraph, load_labels, parse_hypergraph, parse_labels, save_hypergraph, save_labels, LabeledDataset};
pub use protocol::{
    delta_sweep, f1_metrics, grow_seed_protocol, run_protocol, MethodScore, ProtocolParams, ProtocolRecord, Scores,
    SweepRow,
};
pub use synth::{generate, synth_planted, PlantedConfig};
pub use theorems::{check_theorems, BoundCheck, CheckStatus, TheoremCheckInput, TheoremLedger};
