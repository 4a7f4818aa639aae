//! Extract conceptual and logical dependency graphs from LaTeX sources
//! annotated with `\uses{...}` and `\proves{...}`.
//!
//! The pipeline is split into small pure stages:
//!
//! 1. [`scan`] masks comments and verbatim material, segments chapters and
//!    finds statement/proof environments together with their annotations.
//! 2. [`graph`] binds proofs to statements, builds the typed [`DepGraph`],
//!    detects cycles and computes the transitive reduction.
//! 3. [`layout`] assigns layered 2-D coordinates.
//! 4. [`render`] emits DOT, TikZ and a self-contained HTML preview.
//!
//! [`pipeline`] strings the stages together for a single document.

pub mod diagnostic;
pub mod graph;
pub mod layout;
pub mod pipeline;
pub mod render;
pub mod scan;
pub mod source;
pub mod style;

pub use diagnostic::{Diagnostic, Severity};
pub use graph::{DepGraph, Edge, EdgeKind, NodeKind, StatementNode, UnresolvedPolicy};
pub use layout::LayeredLayout;
pub use pipeline::{ChapterError, ChapterSelector, ScannedDocument};
pub use scan::{ChapterSlice, EnvClass, EnvOccurrence, EnvironmentConfig};
pub use source::SourceDocument;
pub use style::StyleConfig;
