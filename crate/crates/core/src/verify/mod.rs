//! Checks of structural claims about reconfiguration sequences and
//! configuration graphs, and the fast k = 2 reachability test.

mod circulant;
mod hypergraph;
mod k2;
mod shape;
mod upper;

pub use circulant::{check_circulant_structure, CirculantStructure};
pub use hypergraph::{extract_63, Hypergraph3, Parity};
pub use k2::{decide_k2_fast, decide_k2_naive, k2_witness};
pub use shape::{is_config_path, saturate_to_path, PathVerdict};
pub use upper::{verify_upper_bound_mapping, UpperBoundVerdict};
