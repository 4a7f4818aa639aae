use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Warning => "warning",
            Severity::Error => "error",
        })
    }
}

/// A message anchored at a byte offset of the input file.
///
/// Offsets index the original text; masking never shifts them, so they can
/// be resolved through [`SourceDocument::line_col`](crate::SourceDocument::line_col).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    pub offset: usize,
}

impl Diagnostic {
    pub fn error(offset: usize, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Error,
            message: message.into(),
            offset,
        }
    }

    pub fn warning(offset: usize, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Warning,
            message: message.into(),
            offset,
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}
