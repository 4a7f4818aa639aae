//! Per-kind node styling and per-kind edge strokes.
//!
//! Color names come from the dvips vocabulary, which Graphviz also accepts
//! (case-insensitively), so one table serves both emitters.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::graph::{EdgeKind, NodeKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Box,
    Ellipse,
    Diamond,
}

impl Shape {
    pub fn dot_name(self) -> &'static str {
        match self {
            Shape::Box => "box",
            Shape::Ellipse => "ellipse",
            Shape::Diamond => "diamond",
        }
    }

    pub fn tikz_name(self) -> &'static str {
        match self {
            Shape::Box => "rectangle",
            Shape::Ellipse => "ellipse",
            Shape::Diamond => "diamond",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown value `{0}`")]
pub struct UnknownValue(pub String);

impl FromStr for Shape {
    type Err = UnknownValue;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "box" => Ok(Shape::Box),
            "ellipse" => Ok(Shape::Ellipse),
            "diamond" => Ok(Shape::Diamond),
            _ => Err(UnknownValue(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineStyle {
    Solid,
    Dashed,
}

impl FromStr for LineStyle {
    type Err = UnknownValue;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "solid" => Ok(LineStyle::Solid),
            "dashed" => Ok(LineStyle::Dashed),
            _ => Err(UnknownValue(s.to_string())),
        }
    }
}

/// A color name restricted to ASCII letters and digits, which keeps it safe
/// to paste into both DOT and TikZ option lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorName(String);

impl ColorName {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl FromStr for ColorName {
    type Err = UnknownValue;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric()) {
            Ok(ColorName(s.to_string()))
        } else {
            Err(UnknownValue(s.to_string()))
        }
    }
}

impl fmt::Display for ColorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeStyle {
    pub shape: Shape,
    pub color: ColorName,
    pub fill: ColorName,
}

impl NodeStyle {
    fn new(shape: Shape, color: &str, fill: &str) -> Self {
        Self {
            shape,
            color: color.parse().expect("built-in color"),
            fill: fill.parse().expect("built-in color"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StyleConfig {
    nodes: BTreeMap<NodeKind, NodeStyle>,
    pub conceptual: LineStyle,
    pub logical: LineStyle,
    /// Style for nodes synthesized from unresolved keys; drawn dotted.
    pub phantom: NodeStyle,
    pub arrowhead: String,
}

impl Default for StyleConfig {
    fn default() -> Self {
        default_style()
    }
}

/// Boxes for definitions, white diamonds for constructions, blue diamonds
/// for propositions, ellipses for lemmas.
pub fn default_style() -> StyleConfig {
    use NodeKind::*;
    use Shape::*;
    let nodes = [
        (Definition, NodeStyle::new(Box, "Purple", "Lavender")),
        (Construction, NodeStyle::new(Diamond, "Blue", "White")),
        (Proposition, NodeStyle::new(Diamond, "Blue", "SkyBlue")),
        (Lemma, NodeStyle::new(Ellipse, "Blue", "SkyBlue")),
        (Theorem, NodeStyle::new(Ellipse, "Blue", "SkyBlue")),
        (Corollary, NodeStyle::new(Ellipse, "Blue", "White")),
        (Example, NodeStyle::new(Ellipse, "Gray", "White")),
        (Remark, NodeStyle::new(Box, "Gray", "White")),
    ]
    .into_iter()
    .collect();
    StyleConfig {
        nodes,
        conceptual: LineStyle::Dashed,
        logical: LineStyle::Solid,
        phantom: NodeStyle::new(Ellipse, "Red", "White"),
        arrowhead: "stealth".to_string(),
    }
}

impl StyleConfig {
    pub fn node(&self, kind: NodeKind) -> &NodeStyle {
        &self.nodes[&kind]
    }

    /// Style for a node kind, or the phantom style for `None`.
    pub fn node_or_phantom(&self, kind: Option<NodeKind>) -> &NodeStyle {
        kind.map_or(&self.phantom, |k| self.node(k))
    }

    pub fn node_mut(&mut self, kind: NodeKind) -> &mut NodeStyle {
        self.nodes.get_mut(&kind).expect("every kind has a style")
    }

    pub fn edge(&self, kind: EdgeKind) -> LineStyle {
        match kind {
            EdgeKind::Conceptual => self.conceptual,
            EdgeKind::Logical => self.logical,
        }
    }

    pub fn set_edge(&mut self, kind: EdgeKind, style: LineStyle) {
        match kind {
            EdgeKind::Conceptual => self.conceptual = style,
            EdgeKind::Logical => self.logical = style,
        }
    }
}
