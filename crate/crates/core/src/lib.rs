//! Kernelization for planar nonseparating independent set and max leaf
//! spanning tree.
//!
//! The pipeline for nonseparating independent set (NSIS) is
//! [`reduction::nsis_preprocess`] → [`reduction::reduce_dual_separator_exhaustive`]
//! → [`spanning_tree::build_spanning_tree`] with the branching strategy →
//! an independent subset of the tree leaves, found either by 3-colouring the
//! (outerplanar) leaf graph or by [`bigis::independent_set_with_cycles`].
//! Instances that are not decided outright shrink to fewer than `9ℓ`
//! (or `12ℓ`) vertices. The max leaf pipeline shrinks instances to fewer
//! than `5k` vertices.
//!
//! Exponential-time oracles used for testing live in [`oracle`].

pub mod bigis;
pub mod graph;
pub mod io;
pub mod kernel;
pub mod oracle;
pub mod outerplanar;
pub mod reduction;
pub mod spanning_tree;

pub use graph::{Graph, GraphError, Vertex, VertexSet};
pub use kernel::{Certificate, KernelOutcome, NsisVariant};
pub use reduction::{Instance, Problem, ReductionTrace};
pub use spanning_tree::{Strategy, TreeRecord};
