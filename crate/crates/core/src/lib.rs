//! Independent-set reconfiguration toolkit.
//!
//! Builds the k-token configuration graph R_k(G) implicitly, measures exact
//! distances and component diameters under token jumping and token sliding,
//! constructs graphs whose configuration graphs have long shortest paths,
//! and checks the structural facts those constructions rely on.

pub mod apfree;
pub mod bitset;
pub mod constructions;
pub mod engine;
pub mod error;
pub mod graph;
pub mod io;
pub mod mis;
pub mod search;
pub mod verify;

pub use engine::{ConfigComponent, DiameterReport, Engine, Exploration, ReconfigRule, ReconfigSequence};
pub use error::{Error, Result};
pub use graph::{Graph, IndependentSet};
