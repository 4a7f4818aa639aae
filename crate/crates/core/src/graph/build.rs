use std::collections::{BTreeMap, HashMap, HashSet};

use super::kind::{EdgeKind, NodeKind};
use crate::diagnostic::Diagnostic;
use crate::scan::{EnvClass, EnvOccurrence, Reference};

/// What to do with a `\uses` key that names no statement in scope.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum UnresolvedPolicy {
    /// Report and omit the edge.
    #[default]
    Drop,
    /// Report and synthesize a phantom node for the key.
    Phantom,
}

/// A labeled statement, or a phantom stand-in for an unresolved key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatementNode {
    pub id: String,
    /// `None` marks a phantom node.
    pub kind: Option<NodeKind>,
    pub chapter: usize,
    pub title: Option<String>,
    pub display: String,
    pub statement_uses: Vec<String>,
    pub proof_uses: Vec<String>,
    pub has_proof: bool,
    /// Where the statement (or the first reference to a phantom) starts.
    pub offset: usize,
}

impl StatementNode {
    pub fn new(id: impl Into<String>, kind: NodeKind) -> Self {
        let id = id.into();
        Self {
            display: display_name(&id),
            id,
            kind: Some(kind),
            chapter: 0,
            title: None,
            statement_uses: Vec::new(),
            proof_uses: Vec::new(),
            has_proof: false,
            offset: 0,
        }
    }

    pub fn phantom(id: impl Into<String>) -> Self {
        Self {
            kind: None,
            ..Self::new(id, NodeKind::Definition)
        }
    }

    pub fn is_phantom(&self) -> bool {
        self.kind.is_none()
    }
}

/// `def:ring` displays as `ring`; labels without a usable suffix display
/// whole.
pub fn display_name(id: &str) -> String {
    match id.split_once(':') {
        Some((_, rest)) if !rest.is_empty() => rest.to_string(),
        _ => id.to_string(),
    }
}

/// Prerequisite `from` points to dependent `to`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: String,
    pub to: String,
    pub kind: EdgeKind,
}

/// Nodes keyed by label plus at most one typed edge per ordered pair.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DepGraph {
    nodes: BTreeMap<String, StatementNode>,
    edges: BTreeMap<(String, String), EdgeKind>,
    reduced: bool,
    diagnostics: Vec<Diagnostic>,
}

impl DepGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a node unless its id is taken. Returns whether it was added.
    pub fn add_node(&mut self, node: StatementNode) -> bool {
        if self.nodes.contains_key(&node.id) {
            return false;
        }
        self.nodes.insert(node.id.clone(), node);
        true
    }

    /// Adds an edge between existing nodes. A logical edge replaces a
    /// conceptual one on the same pair, never the other way round. Returns
    /// false for self-loops and unknown endpoints.
    pub fn add_edge(&mut self, from: &str, to: &str, kind: EdgeKind) -> bool {
        if from == to || !self.nodes.contains_key(from) || !self.nodes.contains_key(to) {
            return false;
        }
        let slot = self
            .edges
            .entry((from.to_string(), to.to_string()))
            .or_insert(kind);
        if kind == EdgeKind::Logical {
            *slot = EdgeKind::Logical;
        }
        true
    }

    pub fn node(&self, id: &str) -> Option<&StatementNode> {
        self.nodes.get(id)
    }

    /// Nodes in lexicographic id order.
    pub fn nodes(&self) -> impl Iterator<Item = &StatementNode> {
        self.nodes.values()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Edges in lexicographic `(from, to)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(|((from, to), &kind)| Edge {
            from: from.clone(),
            to: to.clone(),
            kind,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_kind(&self, from: &str, to: &str) -> Option<EdgeKind> {
        self.edges.get(&(from.to_string(), to.to_string())).copied()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn diagnostics(&self) -> &[Diagnostic] {
        &self.diagnostics
    }

    pub fn push_diagnostic(&mut self, diagnostic: Diagnostic) {
        self.diagnostics.push(diagnostic);
    }

    pub(crate) fn retain_edges(&mut self, mut keep: impl FnMut(&str, &str) -> bool) {
        self.edges.retain(|(from, to), _| keep(from, to));
        self.reduced = true;
    }
}

/// A proof occurrence bound to the statement occurrence it proves. Both are
/// indices into the occurrence list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProofBinding {
    pub statement: usize,
    pub proof: usize,
}

fn statement_kind(occ: &EnvOccurrence) -> Option<NodeKind> {
    match occ.class {
        EnvClass::Statement(kind) => Some(kind),
        EnvClass::Proof => None,
    }
}

/// First statement occurrence per label, i.e. the one that becomes a node.
fn canonical_labels(occurrences: &[EnvOccurrence]) -> HashMap<&str, usize> {
    let mut index = HashMap::new();
    for (i, occ) in occurrences.iter().enumerate() {
        if let (Some(_), Some(label)) = (statement_kind(occ), occ.label.as_deref()) {
            index.entry(label).or_insert(i);
        }
    }
    index
}

/// Binds each proof to a statement.
///
/// An explicit `\proves{key}` wins. Otherwise the proof goes to the nearest
/// preceding labeled, non-definition statement in the same chapter that has
/// no proof yet. Each statement takes at most one proof.
pub fn associate_proofs(occurrences: &[EnvOccurrence]) -> (Vec<ProofBinding>, Vec<Diagnostic>) {
    let labels = canonical_labels(occurrences);
    let mut bound: HashSet<usize> = HashSet::new();
    let mut bindings = Vec::new();
    let mut diagnostics = Vec::new();

    let eligible = |i: usize, bound: &HashSet<usize>, chapter: usize| {
        let occ = &occurrences[i];
        let Some(kind) = statement_kind(occ) else {
            return false;
        };
        kind != NodeKind::Definition
            && occ.chapter == chapter
            && !bound.contains(&i)
            && occ
                .label
                .as_deref()
                .is_some_and(|l| labels.get(l) == Some(&i))
    };

    for (pi, proof) in occurrences.iter().enumerate() {
        if !proof.is_proof() {
            continue;
        }
        let at = proof.span.start;
        if let Some(Reference { key, offset }) = &proof.proves {
            match labels.get(key.as_str()) {
                None => diagnostics.push(Diagnostic::warning(
                    *offset,
                    format!("\\proves{{{key}}} names no known statement; proof left unbound"),
                )),
                Some(si) if bound.contains(si) => diagnostics.push(Diagnostic::warning(
                    *offset,
                    format!("`{key}` already has a proof; this proof is left unbound"),
                )),
                Some(&si) => {
                    bound.insert(si);
                    bindings.push(ProofBinding {
                        statement: si,
                        proof: pi,
                    });
                }
            }
            continue;
        }

        let mut candidates = (0..pi)
            .rev()
            .filter(|&i| occurrences[i].span.start < at && eligible(i, &bound, proof.chapter));
        let Some(si) = candidates.next() else {
            let msg = if proof.uses.is_empty() {
                "orphan proof: no preceding statement to bind to".to_string()
            } else {
                "orphan proof: no preceding statement to bind to; its \\uses are discarded"
                    .to_string()
            };
            diagnostics.push(Diagnostic::warning(at, msg));
            continue;
        };
        let target = &occurrences[si];
        if matches!(
            statement_kind(target),
            Some(NodeKind::Remark | NodeKind::Example)
        ) {
            let proof_bearing = candidates.find(|&i| {
                !matches!(
                    statement_kind(&occurrences[i]),
                    Some(NodeKind::Remark | NodeKind::Example)
                )
            });
            if let Some(other) = proof_bearing {
                diagnostics.push(Diagnostic::warning(
                    at,
                    format!(
                        "proof binds to {} `{}` by adjacency; add \\proves{{{}}} if it proves that instead",
                        statement_kind(target).expect("statement").key(),
                        target.label.as_deref().unwrap_or_default(),
                        occurrences[other].label.as_deref().unwrap_or_default(),
                    ),
                ));
            }
        }
        bound.insert(si);
        bindings.push(ProofBinding {
            statement: si,
            proof: pi,
        });
    }
    (bindings, diagnostics)
}

/// Builds the unreduced graph.
///
/// With `chapter = Some(i)` only statements of chapter `i` become nodes and
/// keys defined elsewhere fall under `policy`.
pub fn build_graph(
    occurrences: &[EnvOccurrence],
    bindings: &[ProofBinding],
    policy: UnresolvedPolicy,
    chapter: Option<usize>,
) -> DepGraph {
    let mut graph = DepGraph::new();
    let proof_of: HashMap<usize, usize> = bindings.iter().map(|b| (b.statement, b.proof)).collect();
    // (node id, key, offset, kind) in document order
    let mut pending: Vec<(String, Reference, EdgeKind)> = Vec::new();

    for (i, occ) in occurrences.iter().enumerate() {
        let Some(kind) = statement_kind(occ) else {
            continue;
        };
        if chapter.is_some_and(|c| c != occ.chapter) {
            continue;
        }
        let Some(label) = occ.label.as_deref() else {
            graph.push_diagnostic(Diagnostic::warning(
                occ.span.start,
                format!("unlabeled {} environment; no node created", occ.env_name),
            ));
            continue;
        };
        let proof = proof_of.get(&i).map(|&p| &occurrences[p]);
        let mut node = StatementNode::new(label, kind);
        node.chapter = occ.chapter;
        node.title = occ.title.clone();
        node.offset = occ.span.start;
        node.statement_uses = occ.uses.iter().map(|r| r.key.clone()).collect();
        node.proof_uses = proof
            .map(|p| p.uses.iter().map(|r| r.key.clone()).collect())
            .unwrap_or_default();
        node.has_proof = proof.is_some();
        if graph.node(label).is_some() {
            graph.push_diagnostic(Diagnostic::error(
                occ.span.start,
                format!("duplicate label `{label}`; keeping the first definition"),
            ));
            continue;
        }
        pending.extend(
            occ.uses
                .iter()
                .map(|r| (label.to_string(), r.clone(), EdgeKind::Conceptual)),
        );
        if let Some(p) = proof {
            pending.extend(
                p.uses
                    .iter()
                    .map(|r| (label.to_string(), r.clone(), EdgeKind::Logical)),
            );
        }
        graph.add_node(node);
    }

    for (to, Reference { key, offset }, kind) in pending {
        if key == to {
            graph.push_diagnostic(Diagnostic::warning(
                offset,
                format!("`{to}` uses itself; ignored"),
            ));
            continue;
        }
        if graph.node(&key).is_none() {
            match policy {
                UnresolvedPolicy::Drop => {
                    graph.push_diagnostic(Diagnostic::warning(
                        offset,
                        format!("unresolved label `{key}` used by `{to}`; edge dropped"),
                    ));
                    continue;
                }
                UnresolvedPolicy::Phantom => {
                    graph.push_diagnostic(Diagnostic::warning(
                        offset,
                        format!("unresolved label `{key}` used by `{to}`; phantom node created"),
                    ));
                    let mut phantom = StatementNode::phantom(key.clone());
                    phantom.chapter = graph.node(&to).map_or(0, |n| n.chapter);
                    phantom.offset = offset;
                    graph.add_node(phantom);
                }
            }
        }
        graph.add_edge(&key, &to, kind);
    }
    graph.diagnostics.sort_by_key(|d| d.offset);
    graph
}

/// Restricts node creation to the statements of one chapter.
pub fn filter_chapter(
    occurrences: &[EnvOccurrence],
    bindings: &[ProofBinding],
    policy: UnresolvedPolicy,
    chapter: usize,
) -> DepGraph {
    build_graph(occurrences, bindings, policy, Some(chapter))
}
