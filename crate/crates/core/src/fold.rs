//! Relation folding: rewriting TLINK relation types onto a smaller vocabulary,
//! optionally swapping the link arguments.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use crate::model::{Document, Link, LinkKind, RelType, RelationType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FoldName {
    None,
    Cavat,
    Sputlink,
    Compact,
}

impl FoldName {
    pub const ALL: [FoldName; 4] = [FoldName::None, FoldName::Cavat, FoldName::Sputlink, FoldName::Compact];

    pub fn as_str(self) -> &'static str {
        match self {
            FoldName::None => "none",
            FoldName::Cavat => "cavat",
            FoldName::Sputlink => "sputlink",
            FoldName::Compact => "compact",
        }
    }

    /// Whether the scheme is supposed to preserve point semantics.
    pub fn lossless(self) -> bool {
        !matches!(self, FoldName::Compact)
    }
}

impl fmt::Display for FoldName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FoldName {
    type Err = FoldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FoldName::ALL
            .iter()
            .copied()
            .find(|n| n.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| FoldError::UnknownScheme(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FoldRule {
    pub target: RelationType,
    pub swap_args: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FoldError {
    #[error("unknown fold scheme `{0}` (expected none, cavat, sputlink or compact)")]
    UnknownScheme(String),
    #[error("line {line}: expected `ORIGINAL<TAB>TARGET<TAB>swap|noswap`")]
    Malformed { line: usize },
    #[error("line {line}: unknown relation type `{value}`")]
    UnknownRelation { line: usize, value: String },
    #[error("line {line}: expected `swap` or `noswap`, found `{value}`")]
    BadSwap { line: usize, value: String },
    #[error("relation {0} is mapped twice")]
    Duplicate(RelationType),
    #[error("{source_rel} folds to {target}, which is itself folded; the scheme would not be idempotent")]
    Chained {
        source_rel: RelationType,
        target: RelationType,
    },
    #[error("fold scheme `{0}` has no mappings; populate its mapping file first")]
    Empty(FoldName),
}

/// A mapping from relation types to (target, swap) rules. Relation types
/// without a rule are left alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldScheme {
    pub name: FoldName,
    mapping: BTreeMap<RelationType, FoldRule>,
    pub lossless: bool,
}

/// Inverse relation pairs: each source folds onto its target with the
/// arguments swapped.
const CAVAT_TABLE: [(RelationType, RelationType); 8] = [
    (RelationType::After, RelationType::Before),
    (RelationType::IsIncluded, RelationType::Includes),
    (RelationType::IAfter, RelationType::IBefore),
    (RelationType::BegunBy, RelationType::Begins),
    (RelationType::EndedBy, RelationType::Ends),
    (RelationType::DuringInv, RelationType::Simultaneous),
    (RelationType::During, RelationType::Simultaneous),
    (RelationType::Simultaneous, RelationType::Simultaneous),
];

/// Default three-class table, as a mapping file.
pub const COMPACT_TABLE: &str = "\
# Compact fold: collapses TLINK relations to BEFORE, INCLUDES and SIMULTANEOUS.
# ORIGINAL<TAB>TARGET<TAB>swap|noswap
AFTER\tBEFORE\tswap
IBEFORE\tBEFORE\tnoswap
IAFTER\tBEFORE\tswap
IS_INCLUDED\tINCLUDES\tswap
BEGINS\tINCLUDES\tswap
BEGUN_BY\tINCLUDES\tnoswap
ENDS\tINCLUDES\tswap
ENDED_BY\tINCLUDES\tnoswap
DURING\tSIMULTANEOUS\tnoswap
DURING_INV\tSIMULTANEOUS\tnoswap
IDENTITY\tSIMULTANEOUS\tnoswap
";

impl FoldScheme {
    pub fn none() -> Self {
        FoldScheme {
            name: FoldName::None,
            mapping: BTreeMap::new(),
            lossless: true,
        }
    }

    pub fn cavat() -> Self {
        let rules = CAVAT_TABLE.iter().map(|&(from, to)| {
            (
                from,
                FoldRule {
                    target: to,
                    swap_args: true,
                },
            )
        });
        FoldScheme::from_rules(FoldName::Cavat, rules).expect("built-in table is well formed")
    }

    pub fn compact() -> Self {
        FoldScheme::parse(FoldName::Compact, COMPACT_TABLE).expect("built-in table is well formed")
    }

    /// Builds a scheme from rules. A rule mapping a relation onto itself is a
    /// no-op (even with `swap`), and no target may itself be remapped.
    pub fn from_rules(
        name: FoldName,
        rules: impl IntoIterator<Item = (RelationType, FoldRule)>,
    ) -> Result<Self, FoldError> {
        let mut mapping = BTreeMap::new();
        for (from, rule) in rules {
            if mapping.insert(from, rule).is_some() {
                return Err(FoldError::Duplicate(from));
            }
        }
        mapping.retain(|from, rule| *from != rule.target);
        for (from, rule) in &mapping {
            if mapping.contains_key(&rule.target) {
                return Err(FoldError::Chained {
                    source_rel: *from,
                    target: rule.target,
                });
            }
        }
        Ok(FoldScheme {
            name,
            mapping,
            lossless: name.lossless(),
        })
    }

    /// Parses a mapping file: one `ORIGINAL<TAB>TARGET<TAB>swap|noswap` per
    /// line, `#` starts a comment.
    pub fn parse(name: FoldName, text: &str) -> Result<Self, FoldError> {
        let mut rules = alloc::vec::Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: alloc::vec::Vec<&str> = line.split('\t').map(str::trim).filter(|f| !f.is_empty()).collect();
            if fields.len() != 3 {
                return Err(FoldError::Malformed { line: line_no });
            }
            let parse_rel = |value: &str| {
                value.parse::<RelationType>().map_err(|_| FoldError::UnknownRelation {
                    line: line_no,
                    value: value.to_string(),
                })
            };
            let from = parse_rel(fields[0])?;
            let target = parse_rel(fields[1])?;
            let swap_args = match fields[2].to_ascii_lowercase().as_str() {
                "swap" => true,
                "noswap" => false,
                _ => {
                    return Err(FoldError::BadSwap {
                        line: line_no,
                        value: fields[2].to_string(),
                    })
                }
            };
            rules.push((from, FoldRule { target, swap_args }));
        }
        FoldScheme::from_rules(name, rules)
    }

    pub fn rule(&self, rel: RelationType) -> Option<FoldRule> {
        self.mapping.get(&rel).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn rules(&self) -> impl Iterator<Item = (RelationType, FoldRule)> + '_ {
        self.mapping.iter().map(|(k, v)| (*k, *v))
    }

    /// Rewrites one link in place. SLINKs and ALINKs are untouched.
    pub fn fold_link(&self, link: &mut Link) {
        if link.kind != LinkKind::Tlink {
            return;
        }
        let Some(rel) = link.rel_type.temporal() else { return };
        if let Some(rule) = self.rule(rel) {
            link.rel_type = RelType::Temporal(rule.target);
            if rule.swap_args {
                core::mem::swap(&mut link.arg1, &mut link.arg2);
            }
        }
    }
}

pub fn apply_fold(mut doc: Document, scheme: &FoldScheme) -> Document {
    for link in &mut doc.links {
        scheme.fold_link(link);
    }
    doc
}
