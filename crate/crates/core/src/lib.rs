//! Signed graphs, their signed distances and their n-th powers.
//!
//! A signed graph is a simple graph whose edges carry a sign in {+1, -1}.
//! Between two vertices the shortest paths may have different signs; the
//! crate tracks the full set of achievable signs per pair and derives from it
//! the signed distance matrices, the two n-th powers (signed by the maximal and
//! by the minimal shortest-path sign), the associated signed complete graphs,
//! balance certificates and the spectral balance test.
//!
//! The `parallel` feature (on by default) runs per-source distance work and
//! theorem-checking batches on the rayon thread pool. Every parallel entry
//! point has a `*_sequential` twin and both produce identical results.

pub mod balance;
pub mod distance;
mod error;
pub mod format;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod power;
pub mod spectra;

pub use error::{Error, Result};
pub use graph::{Sign, SignedGraph, VertexPath, Walk};
