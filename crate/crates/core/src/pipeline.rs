//! End-to-end processing of one document.

use std::fmt;
use std::str::FromStr;

use crate::diagnostic::Diagnostic;
use crate::graph::{
    associate_proofs, build_graph, detect_cycles, transitive_reduce, DepGraph, ProofBinding,
    UnresolvedPolicy,
};
use crate::render::NodeNames;
use crate::scan::{
    mask_source, scan_annotated, segment_chapters, ChapterSlice, EnvOccurrence, EnvironmentConfig,
};

/// A chapter picked by 0-based index or exact title. Strings that parse as
/// a number are always indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChapterSelector {
    Index(usize),
    Title(String),
}

impl FromStr for ChapterSelector {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => ChapterSelector::Index(i),
            Err(_) => ChapterSelector::Title(s.to_string()),
        })
    }
}

impl fmt::Display for ChapterSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChapterSelector::Index(i) => write!(f, "{i}"),
            ChapterSelector::Title(t) => write!(f, "`{t}`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("no chapter {selector}; available chapters: {available}")]
pub struct ChapterError {
    pub selector: String,
    pub available: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphOptions {
    pub policy: UnresolvedPolicy,
    pub chapter: Option<usize>,
    pub reduce: bool,
}

impl Default for GraphOptions {
    fn default() -> Self {
        Self {
            policy: UnresolvedPolicy::Drop,
            chapter: None,
            reduce: true,
        }
    }
}

/// Everything known about a document before graph construction.
#[derive(Debug, Clone)]
pub struct ScannedDocument {
    pub masked: String,
    pub chapters: Vec<ChapterSlice>,
    pub occurrences: Vec<EnvOccurrence>,
    pub bindings: Vec<ProofBinding>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ScannedDocument {
    /// Mask, segment, scan, extract annotations and bind proofs.
    pub fn scan(text: &str, config: &EnvironmentConfig) -> Self {
        let masked = mask_source(text);
        let (chapters, mut diagnostics) = segment_chapters(&masked);
        let (occurrences, scan_diags) = scan_annotated(&masked, config, &chapters);
        diagnostics.extend(scan_diags);
        let (bindings, bind_diags) = associate_proofs(&occurrences);
        diagnostics.extend(bind_diags);
        diagnostics.sort_by_key(|d| d.offset);
        Self {
            masked,
            chapters,
            occurrences,
            bindings,
            diagnostics,
        }
    }

    pub fn select_chapter(&self, selector: &ChapterSelector) -> Result<usize, ChapterError> {
        let found = match selector {
            ChapterSelector::Index(i) => (*i < self.chapters.len()).then_some(*i),
            ChapterSelector::Title(t) => self.chapters.iter().position(|c| &c.title == t),
        };
        found.ok_or_else(|| ChapterError {
            selector: selector.to_string(),
            available: self
                .chapters
                .iter()
                .map(|c| {
                    if c.title.is_empty() {
                        format!("{} (untitled)", c.index)
                    } else {
                        format!("{} `{}`", c.index, c.title)
                    }
                })
                .collect::<Vec<_>>()
                .join(", "),
        })
    }

    /// Index of the proof bound to a statement occurrence, and vice versa.
    pub fn binding_of(&self, occurrence: usize) -> Option<ProofBinding> {
        self.bindings
            .iter()
            .copied()
            .find(|b| b.statement == occurrence || b.proof == occurrence)
    }

    /// Builds the graph, reports cycles and optionally reduces it.
    pub fn graph(&self, options: &GraphOptions) -> DepGraph {
        let mut graph = build_graph(
            &self.occurrences,
            &self.bindings,
            options.policy,
            options.chapter,
        );
        let (_, cycle_diags) = detect_cycles(&graph);
        for d in cycle_diags {
            graph.push_diagnostic(d);
        }
        if options.reduce {
            graph = transitive_reduce(&graph);
        }
        graph
    }

    /// Scan, graph and naming diagnostics in document order.
    pub fn all_diagnostics(&self, graph: &DepGraph) -> Vec<Diagnostic> {
        let mut all = self.diagnostics.clone();
        all.extend_from_slice(graph.diagnostics());
        all.extend_from_slice(NodeNames::new(graph).diagnostics());
        all.sort_by_key(|d| d.offset);
        all
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        assert_eq!("2".parse(), Ok(ChapterSelector::Index(2)));
        assert_eq!("Intro".parse(), Ok(ChapterSelector::Title("Intro".into())));
    }

    #[test]
    fn chapter_lookup() {
        let doc =
            ScannedDocument::scan("\\chapter{A}x\\chapter{42}y", &EnvironmentConfig::default());
        assert_eq!(doc.select_chapter(&"A".parse().unwrap()), Ok(0));
        // numeric strings are indices even if a title matches
        assert!(doc.select_chapter(&"42".parse().unwrap()).is_err());
        let err = doc.select_chapter(&ChapterSelector::Index(5)).unwrap_err();
        assert_eq!(err.available, "0 `A`, 1 `42`");
    }

    #[test]
    fn implicit_chapter_listed() {
        let doc = ScannedDocument::scan("", &EnvironmentConfig::default());
        let err = doc.select_chapter(&ChapterSelector::Index(5)).unwrap_err();
        assert_eq!(
            err.to_string(),
            "no chapter 5; available chapters: 0 (untitled)"
        );
    }
}
