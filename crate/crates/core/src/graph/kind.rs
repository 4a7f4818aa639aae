use std::fmt;
use std::str::FromStr;

/// The kind of a labeled mathematical statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    Definition,
    Theorem,
    Lemma,
    Proposition,
    Corollary,
    Construction,
    Example,
    Remark,
}

impl NodeKind {
    pub const ALL: [NodeKind; 8] = [
        NodeKind::Definition,
        NodeKind::Theorem,
        NodeKind::Lemma,
        NodeKind::Proposition,
        NodeKind::Corollary,
        NodeKind::Construction,
        NodeKind::Example,
        NodeKind::Remark,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NodeKind::Definition => "Definition",
            NodeKind::Theorem => "Theorem",
            NodeKind::Lemma => "Lemma",
            NodeKind::Proposition => "Proposition",
            NodeKind::Corollary => "Corollary",
            NodeKind::Construction => "Construction",
            NodeKind::Example => "Example",
            NodeKind::Remark => "Remark",
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            NodeKind::Definition => "definition",
            NodeKind::Theorem => "theorem",
            NodeKind::Lemma => "lemma",
            NodeKind::Proposition => "proposition",
            NodeKind::Corollary => "corollary",
            NodeKind::Construction => "construction",
            NodeKind::Example => "example",
            NodeKind::Remark => "remark",
        }
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown kind `{0}`")]
pub struct UnknownKind(pub String);

impl FromStr for NodeKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NodeKind::ALL
            .into_iter()
            .find(|k| k.key().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownKind(s.to_string()))
    }
}

/// Conceptual edges come from statement bodies, logical ones from proofs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    Conceptual,
    Logical,
}

impl EdgeKind {
    pub fn key(self) -> &'static str {
        match self {
            EdgeKind::Conceptual => "conceptual",
            EdgeKind::Logical => "logical",
        }
    }
}

impl FromStr for EdgeKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "conceptual" => Ok(EdgeKind::Conceptual),
            "logical" => Ok(EdgeKind::Logical),
            _ => Err(UnknownKind(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_kinds() {
        for kind in NodeKind::ALL {
            assert_eq!(kind.key().parse::<NodeKind>(), Ok(kind));
            assert_eq!(kind.name().parse::<NodeKind>(), Ok(kind));
        }
        assert!("thm".parse::<NodeKind>().is_err());
        assert_eq!("Logical".parse::<EdgeKind>(), Ok(EdgeKind::Logical));
    }
}
