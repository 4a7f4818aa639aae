//! Dependency graph construction, cycle detection and transitive reduction.

mod build;
mod kind;
mod reduce;

pub use build::{
    associate_proofs, build_graph, filter_chapter, DepGraph, Edge, ProofBinding, StatementNode,
    UnresolvedPolicy,
};
pub use kind::{EdgeKind, NodeKind, UnknownKind};
pub use reduce::{detect_cycles, reduce_edges, strongly_connected_components, transitive_reduce};
