//! Check registry and dispatcher.
//!
//! A check sees one read-only document plus the corpus it belongs to and
//! returns findings. The four built-in checks are registered by
//! [`Registry::new`]; further checks can be added with [`Registry::register`].

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use crate::browse::nearest_matches;
use crate::finding::{CheckFinding, Severity};
use crate::graph::{check_orphans, check_tlink_loop, split_graph_findings, ORPHANS, SPLIT_GRAPH, TLINK_LOOP};
use crate::model::{Corpus, DocKey, Document};
use crate::point_algebra::{check_consistency_with, AgendaOrder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckDescriptor {
    pub name: String,
    pub version: String,
    pub description: String,
}

impl CheckDescriptor {
    pub fn new(name: &str, version: &str, description: &str) -> Self {
        CheckDescriptor {
            name: name.to_string(),
            version: version.to_string(),
            description: description.to_string(),
        }
    }

    pub fn banner(&self) -> String {
        format!("# {} v{} loaded", self.description, self.version)
    }
}

/// What a check may look at besides the document under test.
pub struct CheckContext<'a> {
    pub corpus: &'a Corpus,
}

pub trait Check {
    fn descriptor(&self) -> CheckDescriptor;
    fn run(&self, doc: &Document, ctx: &CheckContext<'_>) -> Vec<CheckFinding>;
}

pub const CONSISTENT: &str = "consistent";

/// Point-algebra closure over each document's TLINKs.
pub struct ConsistencyCheck {
    pub order: AgendaOrder,
}

impl Check for ConsistencyCheck {
    fn descriptor(&self) -> CheckDescriptor {
        CheckDescriptor::new(CONSISTENT, "1", "Temporal graph consistency checker")
    }

    fn run(&self, doc: &Document, _ctx: &CheckContext<'_>) -> Vec<CheckFinding> {
        let result = check_consistency_with(doc, self.order);
        let (Some(conflict), Some(message)) = (&result.conflict, result.finding_text()) else {
            return Vec::new();
        };
        alloc::vec![CheckFinding {
            check: CONSISTENT.to_string(),
            doc_id: doc.doc_id,
            document: doc.filename.clone(),
            severity: Severity::Error,
            subjects: alloc::vec![conflict.left.to_string(), conflict.right.to_string()],
            message,
        }]
    }
}

struct SplitGraph;

impl Check for SplitGraph {
    fn descriptor(&self) -> CheckDescriptor {
        CheckDescriptor::new(SPLIT_GRAPH, "1", "Split graph detection")
    }

    fn run(&self, doc: &Document, _ctx: &CheckContext<'_>) -> Vec<CheckFinding> {
        split_graph_findings(doc)
    }
}

struct TlinkLoop;

impl Check for TlinkLoop {
    fn descriptor(&self) -> CheckDescriptor {
        CheckDescriptor::new(TLINK_LOOP, "1", "TLINK loop checker")
    }

    fn run(&self, doc: &Document, _ctx: &CheckContext<'_>) -> Vec<CheckFinding> {
        check_tlink_loop(doc)
    }
}

struct Orphans;

impl Check for Orphans {
    fn descriptor(&self) -> CheckDescriptor {
        CheckDescriptor::new(ORPHANS, "1", "Orphaned tag detection")
    }

    fn run(&self, doc: &Document, _ctx: &CheckContext<'_>) -> Vec<CheckFinding> {
        check_orphans(doc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Targets {
    /// The document selected with `browse doc`.
    Default,
    All,
    Keys(Vec<DocKey>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("unknown check `{name}`; available checks: {available}")]
    UnknownCheck { name: String, available: String },
    #[error("a check named `{0}` is already registered")]
    Duplicate(String),
    #[error("no document `{key}` in corpus{}", suggestion_suffix(.suggestions))]
    UnknownTarget { key: String, suggestions: Vec<String> },
    #[error("no document selected; use `browse doc <id>` or give targets with `in`")]
    NoDefaultDocument,
}

pub(crate) fn suggestion_suffix(suggestions: &[String]) -> String {
    if suggestions.is_empty() {
        String::new()
    } else {
        format!("; did you mean {}?", suggestions.join(", "))
    }
}

pub struct Registry {
    checks: BTreeMap<String, Box<dyn Check>>,
}

impl Default for Registry {
    fn default() -> Self {
        Registry::new()
    }
}

impl Registry {
    /// A registry holding the built-in checks.
    pub fn new() -> Self {
        let mut r = Registry::empty();
        let builtins: [Box<dyn Check>; 4] = [
            Box::new(ConsistencyCheck {
                order: AgendaOrder::default(),
            }),
            Box::new(SplitGraph),
            Box::new(TlinkLoop),
            Box::new(Orphans),
        ];
        for check in builtins {
            r.register(check).expect("built-in names are distinct");
        }
        r
    }

    pub fn empty() -> Self {
        Registry {
            checks: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, check: Box<dyn Check>) -> Result<(), CheckError> {
        let name = check.descriptor().name;
        if self.checks.contains_key(&name) {
            return Err(CheckError::Duplicate(name));
        }
        self.checks.insert(name, check);
        Ok(())
    }

    /// Replaces a check of the same name, e.g. to change the agenda order.
    pub fn replace(&mut self, check: Box<dyn Check>) {
        self.checks.insert(check.descriptor().name, check);
    }

    /// Descriptors sorted by name.
    pub fn list(&self) -> Vec<CheckDescriptor> {
        self.checks.values().map(|c| c.descriptor()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn Check, CheckError> {
        self.checks
            .get(name)
            .map(|c| c.as_ref())
            .ok_or_else(|| CheckError::UnknownCheck {
                name: name.to_string(),
                available: self.checks.keys().cloned().collect::<Vec<_>>().join(", "),
            })
    }

    /// Resolves every target, then runs the check over them in target order.
    pub fn run(
        &self,
        name: &str,
        corpus: &Corpus,
        targets: &Targets,
        default: Option<&DocKey>,
    ) -> Result<CheckRun, CheckError> {
        let check = self.get(name)?;
        let docs = resolve_targets(corpus, targets, default)?;
        let ctx = CheckContext { corpus };
        let documents = docs
            .into_iter()
            .map(|doc| DocumentRun {
                doc_id: doc.doc_id,
                filename: doc.filename.clone(),
                findings: check.run(doc, &ctx),
            })
            .collect();
        Ok(CheckRun {
            descriptor: check.descriptor(),
            documents,
        })
    }
}

pub fn resolve_targets<'a>(
    corpus: &'a Corpus,
    targets: &Targets,
    default: Option<&DocKey>,
) -> Result<Vec<&'a Document>, CheckError> {
    let lookup = |key: &DocKey| {
        corpus.document(key).ok_or_else(|| CheckError::UnknownTarget {
            key: key.to_string(),
            suggestions: nearest_matches(&key.to_string(), corpus.documents.iter().map(|d| d.filename.as_str())),
        })
    };
    match targets {
        Targets::All => {
            let mut docs: Vec<&Document> = corpus.documents.iter().collect();
            docs.sort_by_key(|d| d.doc_id);
            Ok(docs)
        }
        Targets::Default => Ok(alloc::vec![lookup(default.ok_or(CheckError::NoDefaultDocument)?)?]),
        Targets::Keys(keys) => keys.iter().map(lookup).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocumentRun {
    pub doc_id: u32,
    pub filename: String,
    pub findings: Vec<CheckFinding>,
}

/// Result of one `check` command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRun {
    pub descriptor: CheckDescriptor,
    pub documents: Vec<DocumentRun>,
}

impl CheckRun {
    pub fn findings(&self) -> impl Iterator<Item = &CheckFinding> {
        self.documents.iter().flat_map(|d| d.findings.iter())
    }

    pub fn count(&self, severity: Severity) -> usize {
        self.findings().filter(|f| f.severity == severity).count()
    }

    pub fn has_errors(&self) -> bool {
        self.count(Severity::Error) > 0
    }

    pub fn summary(&self) -> String {
        let n = self.documents.len();
        format!(
            "# Checked {} document{}: {} ERROR, {} WARNING, {} INFO",
            n,
            if n == 1 { "" } else { "s" },
            self.count(Severity::Error),
            self.count(Severity::Warning),
            self.count(Severity::Info)
        )
    }

    /// Banner, per-document blocks and the summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.descriptor.banner());
        for doc in &self.documents {
            let _ = writeln!(out, "# Checking {} (id {})", doc.filename, doc.doc_id);
            for f in &doc.findings {
                let _ = writeln!(out, "{}", f.message);
            }
        }
        let _ = writeln!(out, "{}", self.summary());
        out
    }
}
