use std::path::{Path, PathBuf};

use crate::diagnostic::Diagnostic;

/// One input file together with a byte-offset to line/column index.
#[derive(Debug, Clone)]
pub struct SourceDocument {
    path: PathBuf,
    text: String,
    line_starts: Vec<usize>,
}

impl SourceDocument {
    pub fn new(path: impl Into<PathBuf>, text: impl Into<String>) -> Self {
        let text = text.into();
        let line_starts = std::iter::once(0)
            .chain(text.match_indices('\n').map(|(i, _)| i + 1))
            .collect();
        Self {
            path: path.into(),
            text,
            line_starts,
        }
    }

    pub fn read(path: impl AsRef<Path>) -> std::io::Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Ok(Self::new(path, text))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// 1-based line and column of a byte offset. Columns count characters.
    /// Offsets past the end clamp to the end of the text.
    pub fn line_col(&self, offset: usize) -> (usize, usize) {
        let offset = offset.min(self.text.len());
        let line = self.line_starts.partition_point(|&s| s <= offset) - 1;
        let start = self.line_starts[line];
        let mut end = offset;
        while !self.text.is_char_boundary(end) {
            end -= 1;
        }
        let column = self.text[start..end].chars().count() + 1;
        (line + 1, column)
    }

    /// Formats `path:line:col: severity: message`.
    pub fn format_diagnostic(&self, diagnostic: &Diagnostic) -> String {
        let (line, col) = self.line_col(diagnostic.offset);
        format!(
            "{}:{}:{}: {}: {}",
            self.path.display(),
            line,
            col,
            diagnostic.severity,
            diagnostic.message
        )
    }
}
