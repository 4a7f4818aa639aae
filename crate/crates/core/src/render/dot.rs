use std::fmt::Write;

use super::names::NodeNames;
use crate::graph::DepGraph;
use crate::style::{LineStyle, StyleConfig};

fn quote(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            // keeps the text free of `</script` when embedded in HTML
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '\n' | '\r' => out.push(' '),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Graphviz source. Carries no coordinates; Graphviz does its own layout.
pub fn emit_dot(graph: &DepGraph, style: &StyleConfig) -> String {
    let names = NodeNames::new(graph);
    let mut out = String::from("digraph G {\n");
    for node in graph.nodes() {
        let s = style.node_or_phantom(node.kind);
        let fill_style = if node.is_phantom() {
            "\"filled,dotted\""
        } else {
            "filled"
        };
        writeln!(
            out,
            "  {} [label={}, tooltip={}, shape={}, color={}, fillcolor={}, style={}];",
            names.get(&node.id),
            quote(&node.display),
            quote(&node.id),
            s.shape.dot_name(),
            s.color,
            s.fill,
            fill_style,
        )
        .unwrap();
    }
    for edge in graph.edges() {
        write!(
            out,
            "  {} -> {}",
            names.get(&edge.from),
            names.get(&edge.to)
        )
        .unwrap();
        if style.edge(edge.kind) == LineStyle::Dashed {
            out.push_str(" [style=dashed]");
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}
