use regex::{Regex, RegexBuilder};

use crate::graph::NodeKind;

/// What a scanned environment turns into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EnvClass {
    Statement(NodeKind),
    Proof,
}

impl EnvClass {
    pub fn name(self) -> &'static str {
        match self {
            EnvClass::Statement(kind) => kind.name(),
            EnvClass::Proof => "Proof",
        }
    }
}

#[derive(Debug, Clone)]
struct EnvRule {
    pattern: Regex,
    class: EnvClass,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("expected PATTERN=KIND, got `{0}`")]
    Malformed(String),
    #[error("unknown kind `{kind}` in `{token}`")]
    UnknownKind { token: String, kind: String },
    #[error("invalid pattern in `{token}`: {source}")]
    InvalidPattern {
        token: String,
        #[source]
        source: regex::Error,
    },
}

/// Two rules of the same priority tier that classify one environment name
/// differently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassConflict {
    pub name: String,
    pub first: EnvClass,
    pub second: EnvClass,
}

/// Maps environment names to statement kinds or proofs.
///
/// User overrides are consulted before the built-in table. Every pattern is
/// anchored, so `thm` never matches `thmx`.
#[derive(Debug, Clone)]
pub struct EnvironmentConfig {
    overrides: Vec<EnvRule>,
    defaults: Vec<EnvRule>,
}

const DEFAULT_TABLE: &[(&str, EnvClass)] = &[
    (
        "definition|defn|def",
        EnvClass::Statement(NodeKind::Definition),
    ),
    ("theorem|thm", EnvClass::Statement(NodeKind::Theorem)),
    ("lemma|lem", EnvClass::Statement(NodeKind::Lemma)),
    (
        "proposition|prop",
        EnvClass::Statement(NodeKind::Proposition),
    ),
    ("corollary|cor", EnvClass::Statement(NodeKind::Corollary)),
    (
        "construction|constr",
        EnvClass::Statement(NodeKind::Construction),
    ),
    ("example|ex", EnvClass::Statement(NodeKind::Example)),
    ("remark|rmk|rem", EnvClass::Statement(NodeKind::Remark)),
];

impl Default for EnvironmentConfig {
    fn default() -> Self {
        let mut defaults: Vec<EnvRule> = DEFAULT_TABLE
            .iter()
            .map(|&(alts, class)| EnvRule {
                pattern: anchored(alts, true).expect("built-in pattern"),
                class,
            })
            .collect();
        defaults.push(EnvRule {
            pattern: Regex::new("^proof$").expect("built-in pattern"),
            class: EnvClass::Proof,
        });
        Self {
            overrides: Vec::new(),
            defaults,
        }
    }
}

fn anchored(pattern: &str, case_insensitive: bool) -> Result<Regex, regex::Error> {
    RegexBuilder::new(&format!("^(?:{pattern})$"))
        .case_insensitive(case_insensitive)
        .build()
}

impl EnvironmentConfig {
    /// Default table plus `PATTERN=KIND` overrides, where KIND is a node kind
    /// or `proof`.
    pub fn with_overrides<S: AsRef<str>>(overrides: &[S]) -> Result<Self, ConfigError> {
        let mut config = Self::default();
        for token in overrides {
            config.add_override(token.as_ref())?;
        }
        Ok(config)
    }

    pub fn add_override(&mut self, token: &str) -> Result<(), ConfigError> {
        let (pattern, kind) = token
            .rsplit_once('=')
            .filter(|(p, k)| !p.is_empty() && !k.trim().is_empty())
            .ok_or_else(|| ConfigError::Malformed(token.to_string()))?;
        let class = if kind.trim().eq_ignore_ascii_case("proof") {
            EnvClass::Proof
        } else {
            EnvClass::Statement(kind.parse().map_err(|_| ConfigError::UnknownKind {
                token: token.to_string(),
                kind: kind.to_string(),
            })?)
        };
        let pattern = anchored(pattern, false).map_err(|source| ConfigError::InvalidPattern {
            token: token.to_string(),
            source,
        })?;
        self.overrides.push(EnvRule { pattern, class });
        Ok(())
    }

    /// Classifies an environment name. Overrides win over defaults; within a
    /// tier the first matching rule wins, and a disagreeing later rule is
    /// reported as a conflict.
    pub fn classify(&self, name: &str) -> (Option<EnvClass>, Option<ClassConflict>) {
        for tier in [&self.overrides, &self.defaults] {
            let mut matches = tier.iter().filter(|r| r.pattern.is_match(name));
            if let Some(first) = matches.next() {
                let conflict = matches
                    .find(|r| r.class != first.class)
                    .map(|r| ClassConflict {
                        name: name.to_string(),
                        first: first.class,
                        second: r.class,
                    });
                return (Some(first.class), conflict);
            }
        }
        (None, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class_of(config: &EnvironmentConfig, name: &str) -> Option<EnvClass> {
        config.classify(name).0
    }

    #[test]
    fn default_aliases() {
        let c = EnvironmentConfig::default();
        use NodeKind::*;
        for (name, kind) in [
            ("definition", Definition),
            ("defn", Definition),
            ("def", Definition),
            ("Definition", Definition),
            ("thm", Theorem),
            ("THEOREM", Theorem),
            ("lem", Lemma),
            ("prop", Proposition),
            ("cor", Corollary),
            ("constr", Construction),
            ("ex", Example),
            ("rmk", Remark),
            ("rem", Remark),
        ] {
            assert_eq!(
                class_of(&c, name),
                Some(EnvClass::Statement(kind)),
                "{name}"
            );
        }
        assert_eq!(class_of(&c, "proof"), Some(EnvClass::Proof));
        assert_eq!(class_of(&c, "thmx"), None);
        assert_eq!(class_of(&c, "itemize"), None);
        assert_eq!(class_of(&c, "theorem*"), None);
    }

    #[test]
    fn override_wins() {
        let c = EnvironmentConfig::with_overrides(&["claim=lemma", "thm=Proposition", "pf=proof"])
            .unwrap();
        assert_eq!(
            class_of(&c, "claim"),
            Some(EnvClass::Statement(NodeKind::Lemma))
        );
        assert_eq!(
            class_of(&c, "thm"),
            Some(EnvClass::Statement(NodeKind::Proposition))
        );
        assert_eq!(class_of(&c, "pf"), Some(EnvClass::Proof));
        assert_eq!(
            class_of(&c, "theorem"),
            Some(EnvClass::Statement(NodeKind::Theorem))
        );
    }

    #[test]
    fn conflicting_overrides_reported() {
        let c = EnvironmentConfig::with_overrides(&["cl.*=lemma", "claim=theorem"]).unwrap();
        let (class, conflict) = c.classify("claim");
        assert_eq!(class, Some(EnvClass::Statement(NodeKind::Lemma)));
        assert_eq!(
            conflict.unwrap().second,
            EnvClass::Statement(NodeKind::Theorem)
        );
        assert!(c.classify("clx").1.is_none());
    }

    #[test]
    fn bad_overrides() {
        assert!(matches!(
            EnvironmentConfig::with_overrides(&["claim=lemmata"]),
            Err(ConfigError::UnknownKind { .. })
        ));
        assert!(matches!(
            EnvironmentConfig::with_overrides(&["claim"]),
            Err(ConfigError::Malformed(_))
        ));
        assert!(matches!(
            EnvironmentConfig::with_overrides(&["(=lemma"]),
            Err(ConfigError::InvalidPattern { .. })
        ));
    }
}
