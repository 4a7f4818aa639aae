use std::collections::{BTreeMap, HashSet};

use crate::diagnostic::Diagnostic;
use crate::graph::DepGraph;

/// Maps a label to an identifier made of `[A-Za-z0-9_]` that is valid in
/// both DOT and TikZ. Identifiers starting with a digit get an `n_` prefix.
pub fn sanitize(id: &str) -> String {
    let mut out: String = id
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect();
    if out.starts_with(|c: char| c.is_ascii_digit()) {
        out.insert_str(0, "n_");
    }
    out
}

/// Injective assignment of sanitized names to graph nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeNames {
    names: BTreeMap<String, String>,
    diagnostics: Vec<Diagnostic>,
}

impl NodeNames {
    /// Collisions are resolved in id order with `_2`, `_3`, ... suffixes and
    /// each one is reported.
    pub fn new(graph: &DepGraph) -> Self {
        let mut taken = HashSet::new();
        let mut names = BTreeMap::new();
        let mut first_owner: BTreeMap<String, String> = BTreeMap::new();
        let mut diagnostics = Vec::new();
        for node in graph.nodes() {
            let base = sanitize(&node.id);
            let mut name = base.clone();
            let mut suffix = 2;
            while taken.contains(&name) {
                name = format!("{base}_{suffix}");
                suffix += 1;
            }
            if name != base {
                diagnostics.push(Diagnostic::warning(
                    node.offset,
                    format!(
                        "labels `{}` and `{}` both sanitize to `{base}`; using `{name}` for the latter",
                        first_owner.get(&base).map_or("?", String::as_str),
                        node.id
                    ),
                ));
            }
            first_owner.entry(base).or_insert_with(|| node.id.clone());
            taken.insert(name.clone());
            names.insert(node.id.clone(), name);
        }
        Self { names, diagnostics }
    }

    pub fn get(&self, id: &str) -> &str {
        &self.names[id]
    }

    pub fn diagnostics(&self) -> &[Diagnostic] {
        &self.diagnostics
    }
}
