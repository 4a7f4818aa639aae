//! JSON style files.
//!
//! ```json
//! {"nodes": {"definition": {"shape": "box", "color": "Purple", "fill": "Lavender"}},
//!  "edges": {"conceptual": {"style": "dashed"}},
//!  "phantom": {"color": "Red"},
//!  "arrowhead": "stealth"}
//! ```
//!
//! Every key is optional; anything not given keeps its default.

use std::path::Path;
use std::str::FromStr;

use knowtex_core::style::{ColorName, LineStyle, NodeStyle, Shape, UnknownValue};
use knowtex_core::{EdgeKind, NodeKind, StyleConfig};
use serde_json::{Map, Value};

#[derive(Debug, thiserror::Error)]
pub enum StyleError {
    #[error("cannot read style file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed style file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("style file, at `{path}`: {message}")]
    Invalid { path: String, message: String },
}

fn invalid(path: &str, message: impl Into<String>) -> StyleError {
    StyleError::Invalid {
        path: if path.is_empty() {
            "$".into()
        } else {
            path.into()
        },
        message: message.into(),
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn object<'a>(value: &'a Value, path: &str) -> Result<&'a Map<String, Value>, StyleError> {
    value
        .as_object()
        .ok_or_else(|| invalid(path, "expected an object"))
}

fn parsed<T: FromStr<Err = UnknownValue>>(value: &Value, path: &str) -> Result<T, StyleError> {
    let s = value
        .as_str()
        .ok_or_else(|| invalid(path, "expected a string"))?;
    s.parse()
        .map_err(|e: UnknownValue| invalid(path, e.to_string()))
}

fn apply_node(style: &mut NodeStyle, value: &Value, path: &str) -> Result<(), StyleError> {
    for (key, v) in object(value, path)? {
        let here = join(path, key);
        match key.as_str() {
            "shape" => style.shape = parsed::<Shape>(v, &here)?,
            "color" => style.color = parsed::<ColorName>(v, &here)?,
            "fill" => style.fill = parsed::<ColorName>(v, &here)?,
            _ => return Err(invalid(&here, "unknown key")),
        }
    }
    Ok(())
}

/// Parses style JSON on top of the default style.
pub fn parse_style(text: &str) -> Result<StyleConfig, StyleError> {
    let root: Value = serde_json::from_str(text)?;
    let mut style = StyleConfig::default();
    for (key, value) in object(&root, "")? {
        match key.as_str() {
            "nodes" => {
                for (kind, v) in object(value, "nodes")? {
                    let here = join("nodes", kind);
                    let kind: NodeKind = kind
                        .parse()
                        .map_err(|_| invalid(&here, format!("unknown kind `{kind}`")))?;
                    apply_node(style.node_mut(kind), v, &here)?;
                }
            }
            "edges" => {
                for (kind, v) in object(value, "edges")? {
                    let here = join("edges", kind);
                    let kind: EdgeKind = kind
                        .parse()
                        .map_err(|_| invalid(&here, format!("unknown edge kind `{kind}`")))?;
                    for (k, s) in object(v, &here)? {
                        let there = join(&here, k);
                        if k != "style" {
                            return Err(invalid(&there, "unknown key"));
                        }
                        style.set_edge(kind, parsed::<LineStyle>(s, &there)?);
                    }
                }
            }
            "phantom" => apply_node(&mut style.phantom, value, "phantom")?,
            "arrowhead" => {
                let head = value
                    .as_str()
                    .filter(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphabetic()))
                    .ok_or_else(|| invalid("arrowhead", "expected an arrow tip name"))?;
                style.arrowhead = head.to_string();
            }
            _ => return Err(invalid(key, "unknown key")),
        }
    }
    Ok(style)
}

pub fn load_style(path: &Path) -> Result<StyleConfig, StyleError> {
    let text = std::fs::read_to_string(path).map_err(|source| StyleError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_style(&text)
}
