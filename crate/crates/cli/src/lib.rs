//! The `knowtex` command: scan a LaTeX file and write its dependency graph
//! as DOT, TikZ or a self-contained HTML page.

mod style_file;

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use knowtex_core::layout::layout;
use knowtex_core::pipeline::GraphOptions;
use knowtex_core::render::{emit_dot, emit_html, emit_tikz, HtmlOptions, DEFAULT_VIZ_URL};
use knowtex_core::scan::ConfigError;
use knowtex_core::{
    ChapterError, ChapterSelector, EnvClass, EnvironmentConfig, ScannedDocument, SourceDocument,
    StyleConfig, UnresolvedPolicy,
};

pub use style_file::{load_style, parse_style, StyleError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_DIAGNOSTICS: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Policy {
    /// Drop edges whose source label is not defined.
    #[default]
    Drop,
    /// Keep them, pointing from a placeholder node.
    Phantom,
}

impl From<Policy> for UnresolvedPolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::Drop => UnresolvedPolicy::Drop,
            Policy::Phantom => UnresolvedPolicy::Phantom,
        }
    }
}

/// Draw the dependency graph of a LaTeX document.
#[derive(Debug, Clone, Parser)]
#[command(name = "knowtex", version)]
pub struct Args {
    /// LaTeX source file.
    pub input: PathBuf,

    /// Restrict to one chapter, by 0-based index or exact title.
    #[arg(long, value_name = "N|TITLE")]
    pub chapter: Option<String>,

    /// Extra environment rule, e.g. `claim=lemma` or `beweis=proof`. Repeatable;
    /// consulted before the built-in table.
    #[arg(long = "env", value_name = "PATTERN=KIND")]
    pub env: Vec<String>,

    /// What to do with `\uses` keys that match no label.
    #[arg(long, value_enum, default_value_t = Policy::Drop)]
    pub policy: Policy,

    /// Keep implied edges instead of computing the transitive reduction.
    #[arg(long)]
    pub no_reduce: bool,

    /// Exit with status 1 on warnings too.
    #[arg(long)]
    pub strict: bool,

    /// JSON file with node and edge style overrides.
    #[arg(long, value_name = "FILE.json")]
    pub style: Option<PathBuf>,

    #[arg(long, value_name = "FILE")]
    pub out_dot: Option<PathBuf>,

    #[arg(long, value_name = "FILE")]
    pub out_tikz: Option<PathBuf>,

    #[arg(long, value_name = "FILE")]
    pub out_html: Option<PathBuf>,

    /// Print `index<TAB>title` for every chapter.
    #[arg(long)]
    pub list_chapters: bool,

    /// Print `kind<TAB>label<TAB>line` for every scanned environment.
    #[arg(long)]
    pub list_envs: bool,

    /// Graphviz-in-the-browser script referenced by the HTML page.
    #[arg(long, value_name = "URL", default_value = DEFAULT_VIZ_URL)]
    pub viz_url: String,
}

/// Validated settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: PathBuf,
    pub chapter: Option<ChapterSelector>,
    pub environments: EnvironmentConfig,
    pub policy: UnresolvedPolicy,
    pub reduce: bool,
    pub strict: bool,
    pub style: StyleConfig,
    pub out_dot: Option<PathBuf>,
    pub out_tikz: Option<PathBuf>,
    pub out_html: Option<PathBuf>,
    pub list_chapters: bool,
    pub list_envs: bool,
    pub viz_url: String,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(
        "nothing to do: give --out-dot, --out-tikz, --out-html, --list-chapters or --list-envs"
    )]
    NoOutput,
    #[error("--env: {0}")]
    Environment(#[from] ConfigError),
    #[error(transparent)]
    Style(#[from] StyleError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Chapter(#[from] ChapterError),
}

fn io_error(path: &Path, source: io::Error) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

impl TryFrom<Args> for RunConfig {
    type Error = CliError;

    fn try_from(args: Args) -> Result<Self, CliError> {
        if args.out_dot.is_none()
            && args.out_tikz.is_none()
            && args.out_html.is_none()
            && !args.list_chapters
            && !args.list_envs
        {
            return Err(CliError::NoOutput);
        }
        let environments = EnvironmentConfig::with_overrides(&args.env)?;
        let style = match &args.style {
            Some(path) => load_style(path)?,
            None => StyleConfig::default(),
        };
        Ok(RunConfig {
            input: args.input,
            chapter: args
                .chapter
                .map(|c| c.parse().unwrap_or_else(|e| match e {})),
            environments,
            policy: args.policy.into(),
            reduce: !args.no_reduce,
            strict: args.strict,
            style,
            out_dot: args.out_dot,
            out_tikz: args.out_tikz,
            out_html: args.out_html,
            list_chapters: args.list_chapters,
            list_envs: args.list_envs,
            viz_url: args.viz_url,
        })
    }
}

/// Writes through a temporary file in the destination directory, so the
/// target is either untouched or complete.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn list_chapters(doc: &ScannedDocument, out: &mut dyn Write) -> io::Result<()> {
    for chapter in &doc.chapters {
        writeln!(out, "{}\t{}", chapter.index, chapter.title)?;
    }
    Ok(())
}

/// One line per occurrence. Proofs show the label of the statement they
/// are bound to.
pub fn list_envs(
    source: &SourceDocument,
    doc: &ScannedDocument,
    chapter: Option<usize>,
    out: &mut dyn Write,
) -> io::Result<()> {
    for (i, occ) in doc.occurrences.iter().enumerate() {
        if chapter.is_some_and(|c| c != occ.chapter) {
            continue;
        }
        let label = match occ.class {
            EnvClass::Proof => doc
                .binding_of(i)
                .and_then(|b| doc.occurrences[b.statement].label.clone())
                .unwrap_or_else(|| "(unbound)".to_string()),
            EnvClass::Statement(_) => occ
                .label
                .clone()
                .unwrap_or_else(|| "(unlabeled)".to_string()),
        };
        let (line, _) = source.line_col(occ.span.start);
        writeln!(out, "{}\t{}\t{}", occ.class.name(), label, line)?;
    }
    Ok(())
}

/// Runs the whole pipeline and returns the exit status.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match run_inner(config, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "knowtex: {e}");
            EXIT_USAGE
        }
    }
}

fn run_inner(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, CliError> {
    let source = SourceDocument::read(&config.input).map_err(|e| io_error(&config.input, e))?;
    let doc = ScannedDocument::scan(source.text(), &config.environments);
    let chapter = config
        .chapter
        .as_ref()
        .map(|sel| doc.select_chapter(sel))
        .transpose()?;
    let graph = doc.graph(&GraphOptions {
        policy: config.policy,
        chapter,
        reduce: config.reduce,
    });

    let stdout_error = |e| io_error(Path::new("<stdout>"), e);
    if config.list_chapters {
        list_chapters(&doc, out).map_err(stdout_error)?;
    }
    if config.list_envs {
        list_envs(&source, &doc, chapter, out).map_err(stdout_error)?;
    }

    let mut outputs = Vec::new();
    if let Some(path) = &config.out_dot {
        outputs.push((path, emit_dot(&graph, &config.style)));
    }
    if let Some(path) = &config.out_tikz {
        let tikz = emit_tikz(&graph, &layout(&graph), &config.style)
            .expect("layout covers every node of its own graph");
        outputs.push((path, tikz));
    }
    if let Some(path) = &config.out_html {
        let title = source
            .path()
            .file_name()
            .map_or_else(String::new, |n| n.to_string_lossy().into_owned());
        let options = HtmlOptions {
            title,
            script_url: config.viz_url.clone(),
        };
        outputs.push((path, emit_html(&graph, &config.style, &options)));
    }

    let diagnostics = doc.all_diagnostics(&graph);
    for d in &diagnostics {
        let _ = writeln!(err, "{}", source.format_diagnostic(d));
    }

    for (path, contents) in outputs {
        write_atomic(path, &contents).map_err(|e| io_error(path, e))?;
    }

    let failed = diagnostics.iter().any(|d| d.is_error() || config.strict);
    Ok(if failed { EXIT_DIAGNOSTICS } else { EXIT_OK })
}

/// Parses `argv` and runs. Help and version requests exit 0; other argument
/// errors exit 2.
pub fn main_with_args<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(args) => args,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match RunConfig::try_from(args) {
        Ok(config) => run(&config, out, err),
        Err(e) => {
            let _ = writeln!(err, "knowtex: {e}");
            EXIT_USAGE
        }
    }
}
