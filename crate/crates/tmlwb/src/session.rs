//! Command execution shared by the interactive prompt and batch mode.

use std::fmt::Write;
use std::path::Path;

use tmlwb_core::browse::{link_context, render_tag, select_document, BrowseError};
use tmlwb_core::command::{
    parse_command, Command, ParseError, USAGE_BROWSE, USAGE_CHECK, USAGE_CONTEXT, USAGE_CORPUS, USAGE_SHOW,
};
use tmlwb_core::fold::FoldName;
use tmlwb_core::query::run_query;
use tmlwb_core::report::format_report;
use tmlwb_core::{CheckError, Corpus, DocKey, Document, Registry};

use crate::ingest::{import_corpus, load_fold, IngestError};
use crate::store::{Store, StoreError};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FindingsFormat {
    #[default]
    Text,
    /// One JSON object per finding, no banners.
    JsonLines,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// The command failed; nothing else was affected.
    Error,
    /// A check reported at least one ERROR finding.
    Findings,
    Exit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub status: Status,
}

#[derive(Debug, thiserror::Error)]
pub enum SessionError {
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Browse(#[from] BrowseError),
    #[error("no document selected; use `browse doc <id|filename>` first")]
    NoDocument,
    #[error("cannot serialize finding: {0}")]
    Json(#[from] serde_json::Error),
}

pub struct Session {
    store: Store,
    registry: Registry,
    corpus: Option<Corpus>,
    browsed: Option<u32>,
    pub findings_format: FindingsFormat,
}

const HELP: &str = "\
Commands (keywords are case-insensitive):
  corpus import <dir> [as <name>] [fold none|cavat|sputlink|compact]
  corpus list | corpus use <name> | corpus info | corpus delete <name>
  show (list|distribution|state) of <tag> <field> [where <field> <predicate>]
       [by document|sentence] [min-freq <n>] [as screen|csv|tex]
  browse doc <id|filename>
  browse <tag> <id> [as screen|csv|timeml]
  context <link id>
  check list
  check <name> [in <id|filename>... | in all]
  help [corpus|show|browse|check|context]
  exit
Tags: event instance timex3 signal tlink slink alink
Predicates: is <value> | is not <value> | is filled | is not filled | is unfilled | is empty | is not empty
";

impl Session {
    pub fn new(store: Store) -> Self {
        Session {
            store,
            registry: Registry::new(),
            corpus: None,
            browsed: None,
            findings_format: FindingsFormat::Text,
        }
    }

    pub fn registry_mut(&mut self) -> &mut Registry {
        &mut self.registry
    }

    pub fn store(&self) -> &Store {
        &self.store
    }

    /// Parses and runs one command line. Errors are reported in the outcome,
    /// never returned.
    pub fn execute(&mut self, line: &str) -> Outcome {
        let mut stderr = String::new();
        let result = parse_command(line)
            .map_err(|e: ParseError| SessionError::Parse(e.render(line)))
            .and_then(|cmd| self.run(cmd, &mut stderr));
        match result {
            Ok((stdout, status)) => Outcome { stdout, stderr, status },
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                Outcome {
                    stdout: String::new(),
                    stderr,
                    status: Status::Error,
                }
            }
        }
    }

    fn corpus(&mut self) -> Result<&Corpus, SessionError> {
        if self.corpus.is_none() {
            let name = self.store.active()?.ok_or(StoreError::NoActive)?;
            self.corpus = Some(self.store.load_corpus(&name)?);
        }
        Ok(self.corpus.as_ref().expect("loaded above"))
    }

    fn browsed_document(&mut self) -> Result<&Document, SessionError> {
        let id = self.browsed.ok_or(SessionError::NoDocument)?;
        let corpus = self.corpus()?;
        Ok(select_document(corpus, &DocKey::Id(id))?)
    }

    fn run(&mut self, cmd: Command, stderr: &mut String) -> Result<(String, Status), SessionError> {
        let mut out = String::new();
        let mut status = Status::Ok;
        match cmd {
            Command::CorpusImport { dir, name, fold } => {
                let dir = Path::new(&dir);
                let name = name.unwrap_or_else(|| {
                    dir.file_name()
                        .map(|n| n.to_string_lossy().into_owned())
                        .unwrap_or_default()
                });
                self.store.check_new_name(&name)?;
                let scheme = load_fold(fold.unwrap_or(FoldName::None), Some(&self.store.folds_dir()))?;
                let imported = import_corpus(dir, &name, &scheme)?;
                self.store.save_corpus(&imported.corpus)?;
                for s in &imported.skipped {
                    let level = if s.is_error { "error" } else { "warning" };
                    let _ = writeln!(stderr, "{level}: skipped {}: {}", s.file, s.reason);
                }
                for doc in &imported.corpus.documents {
                    for w in &doc.warnings {
                        let _ = writeln!(stderr, "warning: {}: {}", doc.filename, w);
                    }
                }
                let _ = writeln!(
                    out,
                    "Imported {} documents into `{}` ({})",
                    imported.corpus.documents.len(),
                    imported.corpus.name,
                    imported.corpus.note
                );
            }
            Command::CorpusList => {
                let catalog = self.store.catalog()?;
                if catalog.entries.is_empty() {
                    out.push_str("No corpora imported.\n");
                } else {
                    let width = catalog.entries.iter().map(|e| e.name.len()).max().unwrap_or(0).max(4);
                    let _ = writeln!(
                        out,
                        "  {:<width$}  {:>9}  {:<20}  Note",
                        "Name", "Documents", "Imported"
                    );
                    for e in &catalog.entries {
                        let mark = if catalog.active.as_deref() == Some(e.name.as_str()) {
                            '*'
                        } else {
                            ' '
                        };
                        let _ = writeln!(
                            out,
                            "{mark} {:<width$}  {:>9}  {:<20}  {}",
                            e.name, e.documents, e.imported, e.note
                        );
                    }
                }
            }
            Command::CorpusUse(name) => {
                let corpus = self.store.use_corpus(&name)?;
                let _ = writeln!(
                    out,
                    "Using corpus `{}` ({} documents)",
                    corpus.name,
                    corpus.documents.len()
                );
                self.corpus = Some(corpus);
                self.browsed = None;
            }
            Command::CorpusInfo => {
                let corpus = self.corpus()?;
                let mut totals = [0usize; 5];
                for d in &corpus.documents {
                    for (t, n) in totals.iter_mut().zip(d.tag_counts()) {
                        *t += n;
                    }
                }
                let _ = writeln!(out, "Corpus: {}", corpus.name);
                let _ = writeln!(out, "Documents: {}", corpus.documents.len());
                let _ = writeln!(
                    out,
                    "Tags: {} EVENT, {} MAKEINSTANCE, {} TIMEX3, {} SIGNAL, {} links",
                    totals[0], totals[1], totals[2], totals[3], totals[4]
                );
                let _ = writeln!(out, "Note: {}", corpus.note);
            }
            Command::CorpusDelete(name) => {
                self.store.delete_corpus(&name)?;
                if self.corpus.as_ref().is_some_and(|c| c.name == name) {
                    self.corpus = None;
                    self.browsed = None;
                }
                let _ = writeln!(out, "Deleted corpus `{name}`");
            }
            Command::Show(query) => {
                let corpus = self.corpus()?;
                out = format_report(&run_query(&corpus.documents, &query), query.format);
            }
            Command::BrowseDoc(key) => {
                let corpus = self.corpus()?;
                let doc = select_document(corpus, &key)?;
                let [e, i, t, s, l] = doc.tag_counts();
                let _ = writeln!(
                    out,
                    "Browsing {} (id {}): {e} EVENT, {i} MAKEINSTANCE, {t} TIMEX3, {s} SIGNAL, {l} links",
                    doc.filename, doc.doc_id
                );
                if !doc.warnings.is_empty() {
                    let _ = writeln!(out, "{} load warnings", doc.warnings.len());
                }
                self.browsed = Some(doc.doc_id);
            }
            Command::BrowseTag { tag, id, format } => {
                out = render_tag(self.browsed_document()?, tag, &id, format)?;
            }
            Command::Context(lid) => {
                out = link_context(self.browsed_document()?, &lid)?;
            }
            Command::CheckList => {
                let list = self.registry.list();
                let width = list.iter().map(|d| d.name.len()).max().unwrap_or(0);
                for d in list {
                    let _ = writeln!(out, "  {:<width$}  v{}  {}", d.name, d.version, d.description);
                }
            }
            Command::Check { name, targets } => {
                let default = self.browsed.map(DocKey::Id);
                self.corpus()?;
                let corpus = self.corpus.as_ref().expect("loaded above");
                let run = self.registry.run(&name, corpus, &targets, default.as_ref())?;
                match self.findings_format {
                    FindingsFormat::Text => out = run.render(),
                    FindingsFormat::JsonLines => {
                        for f in run.findings() {
                            out.push_str(&serde_json::to_string(f)?);
                            out.push('\n');
                        }
                    }
                }
                if run.has_errors() {
                    status = Status::Findings;
                }
            }
            Command::Help(topic) => {
                let text = match topic.as_deref() {
                    Some("corpus") => USAGE_CORPUS,
                    Some("show") => USAGE_SHOW,
                    Some("browse") => USAGE_BROWSE,
                    Some("check") => USAGE_CHECK,
                    Some("context") => USAGE_CONTEXT,
                    _ => HELP,
                };
                if text != HELP {
                    out.push_str("usage: ");
                }
                out.push_str(text);
                if !out.ends_with('\n') {
                    out.push('\n');
                }
            }
            Command::Exit => status = Status::Exit,
        }
        Ok((out, status))
    }
}
