//! LaTeX source scanning: masking, chapters, environments, annotations.

mod chapter;
mod config;
mod environment;
mod mask;

pub use chapter::{segment_chapters, ChapterSlice};
pub use config::{ClassConflict, ConfigError, EnvClass, EnvironmentConfig};
pub use environment::{extract_annotations, scan_environments, EnvOccurrence, Reference};
pub use mask::{mask_comments, mask_source};

use crate::diagnostic::Diagnostic;
use environment::find_commands;

/// Scans environments and extracts their annotations in one go.
///
/// Also reports `\uses`/`\proves` that sit outside every scanned body.
pub fn scan_annotated(
    masked: &str,
    config: &EnvironmentConfig,
    chapters: &[ChapterSlice],
) -> (Vec<EnvOccurrence>, Vec<Diagnostic>) {
    let (mut occurrences, mut diagnostics) = scan_environments(masked, config, chapters);
    let spans: Vec<_> = occurrences.iter().map(|o| o.span.clone()).collect();
    for occ in &mut occurrences {
        let body = occ.body_span.clone();
        let nested: Vec<_> = spans
            .iter()
            .filter(|s| body.start <= s.start && s.end <= body.end)
            .cloned()
            .collect();
        diagnostics.extend(extract_annotations(occ, masked, &nested));
    }

    for cmd in find_commands(masked, 0..masked.len(), &["uses", "proves"]) {
        if cmd.arg.is_some()
            && !occurrences
                .iter()
                .any(|o| o.body_span.contains(&cmd.offset))
        {
            diagnostics.push(Diagnostic::warning(
                cmd.offset,
                format!("\\{} outside any scanned environment is ignored", cmd.name),
            ));
        }
    }
    diagnostics.sort_by_key(|d| d.offset);
    (occurrences, diagnostics)
}
