//! DOT, TikZ and HTML emitters. All output is byte-deterministic: nodes in
//! lexicographic id order, edges in lexicographic `(from, to)` order.

mod dot;
mod html;
mod names;
mod tikz;

pub use dot::emit_dot;
pub use html::{embedded_dot_blocks, emit_html, HtmlOptions, DEFAULT_VIZ_URL};
pub use names::{sanitize, NodeNames};
pub use tikz::{emit_tikz, format_bp, tex_escape};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("layout does not match graph: node `{0}` missing from layout")]
    MissingFromLayout(String),
    #[error("layout does not match graph: node `{0}` not in graph")]
    NotInGraph(String),
}
