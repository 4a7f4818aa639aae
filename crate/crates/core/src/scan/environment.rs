use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

use super::chapter::ChapterSlice;
use super::config::{EnvClass, EnvironmentConfig};
use crate::diagnostic::Diagnostic;

/// A `\uses`/`\proves` key with the offset of the command it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reference {
    pub key: String,
    pub offset: usize,
}

/// One matched environment of a configured kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvOccurrence {
    pub env_name: String,
    pub class: EnvClass,
    /// From the `\` of `\begin` to the closing `}` of `\end{..}`.
    pub span: Range<usize>,
    /// Between the begin command (and its optional title) and `\end`.
    pub body_span: Range<usize>,
    pub chapter: usize,
    pub title: Option<String>,
    pub label: Option<String>,
    pub uses: Vec<Reference>,
    pub proves: Option<Reference>,
}

impl EnvOccurrence {
    pub fn is_proof(&self) -> bool {
        self.class == EnvClass::Proof
    }

    pub fn use_keys(&self) -> Vec<&str> {
        self.uses.iter().map(|r| r.key.as_str()).collect()
    }
}

/// A control word found in the masked text, e.g. `\uses{a,b}`.
#[derive(Debug, Clone)]
pub(crate) struct Command<'a> {
    pub name: &'a str,
    pub offset: usize,
    /// Argument text without braces; `None` when the braces never close
    /// inside the searched range.
    pub arg: Option<&'a str>,
    /// Whether a `{` followed the command name.
    pub braced: bool,
    /// Offset one past the closing brace (or the command name when
    /// unterminated).
    pub end: usize,
}

/// Number of backslashes immediately before `at`, not looking before `floor`.
fn backslashes_before(bytes: &[u8], floor: usize, at: usize) -> usize {
    bytes[floor..at]
        .iter()
        .rev()
        .take_while(|&&b| b == b'\\')
        .count()
}

/// Finds `\name{...}` for the given names inside `range`. Arguments are
/// brace-balanced and never extend past `range.end`.
pub(crate) fn find_commands<'a>(
    masked: &'a str,
    range: Range<usize>,
    names: &[&'a str],
) -> Vec<Command<'a>> {
    let bytes = masked.as_bytes();
    let mut out = Vec::new();
    let mut i = range.start;
    while i < range.end {
        if bytes[i] != b'\\' {
            i += 1;
            continue;
        }
        if backslashes_before(bytes, range.start, i) % 2 == 1 {
            i += 1;
            continue;
        }
        let word_len = bytes[i + 1..range.end]
            .iter()
            .take_while(|b| b.is_ascii_alphabetic())
            .count();
        let word = &masked[i + 1..i + 1 + word_len];
        let after_word = i + 1 + word_len;
        let Some(&name) = names.iter().find(|&&n| n == word) else {
            i = after_word.max(i + 1);
            continue;
        };
        let mut j = after_word;
        while j < range.end && matches!(bytes[j], b' ' | b'\t' | b'\n' | b'\r') {
            j += 1;
        }
        if j >= range.end || bytes[j] != b'{' {
            out.push(Command {
                name,
                offset: i,
                arg: None,
                braced: false,
                end: after_word,
            });
            i = after_word;
            continue;
        }
        match balanced_close(bytes, j, range.end) {
            Some(close) => {
                out.push(Command {
                    name,
                    offset: i,
                    arg: Some(&masked[j + 1..close]),
                    braced: true,
                    end: close + 1,
                });
                i = close + 1;
            }
            None => {
                out.push(Command {
                    name,
                    offset: i,
                    arg: None,
                    braced: true,
                    end: after_word,
                });
                i = after_word;
            }
        }
    }
    out
}

/// Offset of the `}` matching the `{` at `open`, searching below `limit`.
fn balanced_close(bytes: &[u8], open: usize, limit: usize) -> Option<usize> {
    let mut depth = 0usize;
    let mut k = open;
    while k < limit {
        match bytes[k] {
            b'\\' => k += 1,
            b'{' => depth += 1,
            b'}' => {
                depth -= 1;
                if depth == 0 {
                    return Some(k);
                }
            }
            _ => {}
        }
        k += 1;
    }
    None
}

struct Open {
    begin: usize,
    body_start: usize,
    title: Option<String>,
}

/// Finds every configured environment in document order.
///
/// `\begin`/`\end` pairs are matched with one stack per environment name.
/// Unmatched `\end` and unclosed `\begin` are reported; unclosed ones are
/// dropped. Annotations are left empty; see [`extract_annotations`].
pub fn scan_environments(
    masked: &str,
    config: &EnvironmentConfig,
    chapters: &[ChapterSlice],
) -> (Vec<EnvOccurrence>, Vec<Diagnostic>) {
    let bytes = masked.as_bytes();
    let mut diagnostics = Vec::new();
    let mut classes: HashMap<&str, Option<EnvClass>> = HashMap::new();
    let mut stacks: BTreeMap<&str, Vec<Open>> = BTreeMap::new();
    let mut found = Vec::new();

    for cmd in find_commands(masked, 0..masked.len(), &["begin", "end"]) {
        let Some(name) = cmd.arg else { continue };
        let class = *classes.entry(name).or_insert_with(|| {
            let (class, conflict) = config.classify(name);
            if let Some(c) = conflict {
                diagnostics.push(Diagnostic::error(
                    cmd.offset,
                    format!(
                        "environment `{}` matches both {} and {}; using {}",
                        c.name,
                        c.first.name(),
                        c.second.name(),
                        c.first.name()
                    ),
                ));
            }
            class
        });
        let Some(class) = class else { continue };

        if cmd.name == "begin" {
            let (title, body_start) = optional_title(bytes, masked, cmd.end);
            stacks.entry(name).or_default().push(Open {
                begin: cmd.offset,
                body_start,
                title,
            });
        } else {
            match stacks.get_mut(name).and_then(Vec::pop) {
                Some(open) => found.push(EnvOccurrence {
                    env_name: name.to_string(),
                    class,
                    span: open.begin..cmd.end,
                    body_span: open.body_start..cmd.offset,
                    chapter: chapter_of(chapters, open.begin),
                    title: open.title,
                    label: None,
                    uses: Vec::new(),
                    proves: None,
                }),
                None => diagnostics.push(Diagnostic::error(
                    cmd.offset,
                    format!("\\end{{{name}}} without matching \\begin{{{name}}}"),
                )),
            }
        }
    }

    let mut unclosed: Vec<_> = stacks
        .into_iter()
        .flat_map(|(name, opens)| opens.into_iter().map(move |o| (o.begin, name)))
        .collect();
    unclosed.sort();
    for (begin, name) in unclosed {
        diagnostics.push(Diagnostic::error(
            begin,
            format!("\\begin{{{name}}} is never closed; environment ignored"),
        ));
    }

    found.sort_by_key(|o| o.span.start);
    (found, diagnostics)
}

/// Parses an optional `[title]` right after `\begin{name}` (spaces and tabs
/// allowed in between). Returns the title and where the body starts.
fn optional_title(bytes: &[u8], masked: &str, after_begin: usize) -> (Option<String>, usize) {
    let mut i = after_begin;
    while i < bytes.len() && matches!(bytes[i], b' ' | b'\t') {
        i += 1;
    }
    if bytes.get(i) != Some(&b'[') {
        return (None, after_begin);
    }
    let mut braces = 0usize;
    let mut k = i + 1;
    while k < bytes.len() {
        match bytes[k] {
            b'\\' => k += 1,
            b'{' => braces += 1,
            b'}' => braces = braces.saturating_sub(1),
            b']' if braces == 0 => {
                let title = masked[i + 1..k]
                    .split_whitespace()
                    .collect::<Vec<_>>()
                    .join(" ");
                return (Some(title), k + 1);
            }
            _ => {}
        }
        k += 1;
    }
    (None, after_begin)
}

pub(crate) fn chapter_of(chapters: &[ChapterSlice], offset: usize) -> usize {
    chapters
        .partition_point(|c| c.span.start <= offset)
        .saturating_sub(1)
}

/// Fills `label`, `uses` and `proves` from the occurrence body.
///
/// Commands inside `nested` ranges (bodies of inner scanned environments)
/// belong to those environments and are skipped.
pub fn extract_annotations(
    occ: &mut EnvOccurrence,
    masked: &str,
    nested: &[Range<usize>],
) -> Vec<Diagnostic> {
    let mut diagnostics = Vec::new();
    let commands = find_commands(masked, occ.body_span.clone(), &["label", "uses", "proves"]);
    for cmd in commands {
        if nested.iter().any(|r| r.contains(&cmd.offset)) {
            continue;
        }
        let Some(arg) = cmd.arg else {
            diagnostics.push(if cmd.braced {
                Diagnostic::error(
                    cmd.offset,
                    format!("unbalanced braces in the argument of \\{}", cmd.name),
                )
            } else {
                Diagnostic::warning(cmd.offset, format!("\\{} without an argument", cmd.name))
            });
            continue;
        };
        match cmd.name {
            "label" => {
                let key = arg.trim();
                if key.is_empty() {
                    diagnostics.push(Diagnostic::warning(cmd.offset, "empty \\label"));
                } else if occ.label.is_none() {
                    occ.label = Some(key.to_string());
                }
            }
            "uses" => {
                let mut any = false;
                for key in arg.split(',').map(str::trim).filter(|k| !k.is_empty()) {
                    any = true;
                    if !occ.uses.iter().any(|r| r.key == key) {
                        occ.uses.push(Reference {
                            key: key.to_string(),
                            offset: cmd.offset,
                        });
                    }
                }
                if !any {
                    diagnostics.push(Diagnostic::warning(cmd.offset, "empty uses"));
                }
            }
            "proves" => {
                let key = arg.trim();
                if key.is_empty() {
                    diagnostics.push(Diagnostic::warning(cmd.offset, "empty \\proves"));
                } else if occ.proves.is_some() {
                    diagnostics.push(Diagnostic::warning(
                        cmd.offset,
                        "second \\proves in one environment; the first one wins",
                    ));
                } else {
                    if !occ.is_proof() {
                        diagnostics.push(Diagnostic::warning(
                            cmd.offset,
                            "\\proves outside a proof environment is ignored",
                        ));
                    }
                    occ.proves = Some(Reference {
                        key: key.to_string(),
                        offset: cmd.offset,
                    });
                }
            }
            _ => unreachable!(),
        }
    }
    diagnostics
}
