use std::collections::BTreeSet;
use std::fmt::Write;

use super::names::NodeNames;
use super::RenderError;
use crate::graph::DepGraph;
use crate::layout::LayeredLayout;
use crate::style::{LineStyle, StyleConfig};

/// Formats a coordinate with at most three decimals and at least one,
/// e.g. `162.0` or `60.445`.
pub fn format_bp(value: f64) -> String {
    let rounded = (value * 1000.0).round() / 1000.0;
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    let mut s = format!("{rounded:.3}");
    while s.ends_with('0') && !s.ends_with(".0") {
        s.pop();
    }
    s
}

/// Escapes LaTeX special characters for use as node text.
pub fn tex_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '\\' => out.push_str("\\textbackslash{}"),
            '{' | '}' | '_' | '&' | '%' | '$' | '#' => {
                out.push('\\');
                out.push(c);
            }
            '~' => out.push_str("\\textasciitilde{}"),
            '^' => out.push_str("\\textasciicircum{}"),
            '\n' | '\r' => out.push(' '),
            c => out.push(c),
        }
    }
    out
}

/// A `tikzpicture` with one `\node` per graph node at its layout position
/// and one `\draw` per edge.
pub fn emit_tikz(
    graph: &DepGraph,
    layout: &LayeredLayout,
    style: &StyleConfig,
) -> Result<String, RenderError> {
    let ids: BTreeSet<&str> = graph.nodes().map(|n| n.id.as_str()).collect();
    if let Some(id) = ids.iter().find(|id| !layout.position.contains_key(**id)) {
        return Err(RenderError::MissingFromLayout(id.to_string()));
    }
    if let Some(id) = layout.position.keys().find(|id| !ids.contains(id.as_str())) {
        return Err(RenderError::NotInGraph(id.clone()));
    }

    let names = NodeNames::new(graph);
    let mut out = String::from(
        "% needs \\usetikzlibrary{shapes.geometric,arrows} and \\usepackage[dvipsnames]{xcolor}\n",
    );
    out.push_str("\\begin{tikzpicture}[line join=bevel]\n");
    for node in graph.nodes() {
        let s = style.node_or_phantom(node.kind);
        let p = layout.position[&node.id];
        let dotted = if node.is_phantom() { ",dotted" } else { "" };
        writeln!(
            out,
            "\\node ({}) at ({}bp,{}bp) [draw={},fill={},{}{}] {{{}}};",
            names.get(&node.id),
            format_bp(p.x),
            format_bp(p.y),
            s.color,
            s.fill,
            s.shape.tikz_name(),
            dotted,
            tex_escape(&node.display),
        )
        .unwrap();
    }
    for edge in graph.edges() {
        let dashed = match style.edge(edge.kind) {
            LineStyle::Dashed => ",dashed",
            LineStyle::Solid => "",
        };
        writeln!(
            out,
            "\\draw [-{}{}] ({}) -- ({});",
            style.arrowhead,
            dashed,
            names.get(&edge.from),
            names.get(&edge.to),
        )
        .unwrap();
    }
    out.push_str("\\end{tikzpicture}\n");
    Ok(out)
}
