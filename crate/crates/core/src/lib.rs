//! Maximum Minimal Vertex Cover toolkit: exact oracles, kernelization on
//! hereditary graph classes, Erdős–Hajnal partitions, the kernel →
//! dual-approximation → value-approximation pipeline, and the Monotone SAT
//! gadget reduction.

pub mod eh;
pub mod error;
pub mod generators;
pub mod graph;
pub mod kernels;
pub mod lop;
pub mod mvc;
pub mod numeric;
pub mod reductions;

pub use error::{Error, Result};
pub use graph::{Graph, PatternId, VertexSet};
