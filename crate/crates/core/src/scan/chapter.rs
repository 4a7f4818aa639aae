use std::ops::Range;

use crate::diagnostic::Diagnostic;

/// A `\chapter` and everything up to the next one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChapterSlice {
    /// Empty for the implicit whole-document chapter.
    pub title: String,
    pub index: usize,
    pub span: Range<usize>,
}

/// Splits masked text at `\chapter{..}` / `\chapter*{..}` commands.
///
/// The first chapter's span starts at offset 0 so that material before the
/// first `\chapter` is still attributed to some chapter. A document without
/// chapters yields a single untitled slice.
pub fn segment_chapters(masked: &str) -> (Vec<ChapterSlice>, Vec<Diagnostic>) {
    let mut starts = Vec::new();
    let mut diagnostics = Vec::new();
    for (at, _) in masked.match_indices("\\chapter") {
        let Some((title, truncated)) = chapter_title(masked, at + "\\chapter".len()) else {
            continue;
        };
        if truncated {
            diagnostics.push(Diagnostic::error(
                at,
                "unbalanced braces in chapter title; title truncated at end of line",
            ));
        }
        starts.push((at, title));
    }

    if starts.is_empty() {
        return (
            vec![ChapterSlice {
                title: String::new(),
                index: 0,
                span: 0..masked.len(),
            }],
            diagnostics,
        );
    }

    let ends = starts
        .iter()
        .skip(1)
        .map(|(at, _)| *at)
        .chain(std::iter::once(masked.len()));
    let chapters = starts
        .iter()
        .zip(ends)
        .enumerate()
        .map(|(index, ((at, title), end))| ChapterSlice {
            title: title.clone(),
            index,
            span: if index == 0 { 0 } else { *at }..end,
        })
        .collect();
    (chapters, diagnostics)
}

/// Parses `[*][ws][[short]]{title}` after `\chapter`. Returns `None` when the
/// command is actually a longer control word such as `\chapterstyle`.
fn chapter_title(masked: &str, mut i: usize) -> Option<(String, bool)> {
    let bytes = masked.as_bytes();
    if bytes.get(i).is_some_and(u8::is_ascii_alphabetic) {
        return None;
    }
    if bytes.get(i) == Some(&b'*') {
        i += 1;
    }
    i = skip_ws(bytes, i);
    if bytes.get(i) == Some(&b'[') {
        let close = masked[i..].find(']')?;
        i = skip_ws(bytes, i + close + 1);
    }
    if bytes.get(i) != Some(&b'{') {
        return None;
    }
    let start = i + 1;
    let mut depth = 1usize;
    let mut j = start;
    while j < bytes.len() {
        match bytes[j] {
            b'\\' => j += 1,
            b'{' => depth += 1,
            b'}' => {
                depth -= 1;
                if depth == 0 {
                    return Some((normalize_title(&masked[start..j]), false));
                }
            }
            b'\n' => break,
            _ => {}
        }
        j += 1;
    }
    let end = j.min(bytes.len());
    Some((normalize_title(&masked[start..end]), true))
}

fn skip_ws(bytes: &[u8], mut i: usize) -> usize {
    while bytes.get(i).is_some_and(u8::is_ascii_whitespace) {
        i += 1;
    }
    i
}

fn normalize_title(raw: &str) -> String {
    raw.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implicit_chapter() {
        let (chapters, diags) = segment_chapters("no chapters here");
        assert!(diags.is_empty());
        assert_eq!(
            chapters,
            vec![ChapterSlice {
                title: String::new(),
                index: 0,
                span: 0..16
            }]
        );
    }

    #[test]
    fn two_chapters_cover_document() {
        let text = "pre \\chapter{A} one \\chapter{B} two";
        let (chapters, _) = segment_chapters(text);
        assert_eq!(chapters.len(), 2);
        assert_eq!(chapters[0].title, "A");
        assert_eq!(chapters[1].title, "B");
        assert_eq!(chapters[0].span, 0..20);
        assert_eq!(chapters[1].span, 20..text.len());
    }

    #[test]
    fn starred_and_short_title() {
        let (chapters, _) =
            segment_chapters("\\chapter*{Intro}\n\\chapter[Short]{Long {\\em title}}");
        let titles: Vec<_> = chapters.iter().map(|c| c.title.as_str()).collect();
        assert_eq!(titles, ["Intro", "Long {\\em title}"]);
    }

    #[test]
    fn longer_control_word_ignored() {
        let (chapters, _) = segment_chapters("\\chaptermark{x} \\chapter{Real}");
        assert_eq!(chapters.len(), 1);
        assert_eq!(chapters[0].title, "Real");
    }

    #[test]
    fn unbalanced_title_truncated() {
        let (chapters, diags) = segment_chapters("\\chapter{Open {brace\nnext line}");
        assert_eq!(chapters[0].title, "Open {brace");
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].offset, 0);
    }
}
