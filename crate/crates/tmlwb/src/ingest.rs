//! TimeML parsing and directory import.

use std::fs;
use std::path::{Path, PathBuf};

use roxmltree::{Node, ParsingOptions};
use tmlwb_core::fold::{apply_fold, FoldError, FoldName, FoldScheme};
use tmlwb_core::model::{Attributes, LoadWarning};
use tmlwb_core::text::Tokenizer;
use tmlwb_core::{
    Corpus, Document, Event, EventInstance, IntervalRef, Link, LinkKind, RelType, RelationType, Signal, Span, Timex3,
};

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("cannot read {}: {source}", .path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: malformed XML: {message}", .path.display())]
    Malformed { path: PathBuf, message: String },
    #[error("{} is not a directory", .0.display())]
    NotADirectory(PathBuf),
    #[error("no parseable TimeML files in {}", .0.display())]
    NoDocuments(PathBuf),
    #[error("fold table {}: {source}", .path.display())]
    FoldTable { path: PathBuf, source: FoldError },
    #[error(transparent)]
    Fold(#[from] FoldError),
}

/// Placeholder shipped for the SputLink scheme.
pub const SPUTLINK_PLACEHOLDER: &str = include_str!("../folds/sputlink.fold");

/// Resolves a fold scheme. `compact` and `sputlink` read
/// `<folds_dir>/<name>.fold` when present, falling back to the built-in
/// table and the shipped placeholder; `cavat` and `none` are fixed. A scheme
/// with no rules other than `none` is refused.
pub fn load_fold(name: FoldName, folds_dir: Option<&Path>) -> Result<FoldScheme, IngestError> {
    let from_file = |fallback: &str| -> Result<FoldScheme, IngestError> {
        if let Some(path) = folds_dir
            .map(|d| d.join(format!("{}.fold", name.as_str())))
            .filter(|p| p.is_file())
        {
            let text = fs::read_to_string(&path).map_err(|source| IngestError::Io {
                path: path.clone(),
                source,
            })?;
            return FoldScheme::parse(name, &text).map_err(|source| IngestError::FoldTable { path, source });
        }
        Ok(FoldScheme::parse(name, fallback)?)
    };
    let scheme = match name {
        FoldName::None => return Ok(FoldScheme::none()),
        FoldName::Cavat => FoldScheme::cavat(),
        FoldName::Compact => from_file(tmlwb_core::fold::COMPACT_TABLE)?,
        FoldName::Sputlink => from_file(SPUTLINK_PLACEHOLDER)?,
    };
    if scheme.is_empty() {
        return Err(FoldError::Empty(name).into());
    }
    Ok(scheme)
}

/// A file left out of an import.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skipped {
    pub file: String,
    pub reason: String,
    /// Malformed XML is an error; non-XML files are only a warning.
    pub is_error: bool,
}

#[derive(Debug)]
pub struct Imported {
    pub corpus: Corpus,
    pub skipped: Vec<Skipped>,
}

fn xml_options<'x>() -> ParsingOptions<'x> {
    ParsingOptions {
        allow_dtd: true,
        ..ParsingOptions::default()
    }
}

fn attributes(node: Node<'_, '_>, skip: &[&str]) -> Attributes {
    node.attributes()
        .filter(|a| a.namespace().is_none() && !skip.contains(&a.name()))
        .map(|a| (a.name().to_string(), a.value().to_string()))
        .collect()
}

fn required(node: Node<'_, '_>, name: &str, warnings: &mut Vec<LoadWarning>) -> Option<String> {
    match node.attribute(name) {
        Some(v) if !v.is_empty() => Some(v.to_string()),
        _ => {
            let pos = node.document().text_pos_at(node.range().start);
            warnings.push(LoadWarning(format!(
                "{} at line {} has no {} attribute; skipped",
                node.tag_name().name(),
                pos.row,
                name
            )));
            None
        }
    }
}

fn optional(node: Node<'_, '_>, name: &str) -> Option<String> {
    node.attribute(name).filter(|v| !v.is_empty()).map(str::to_string)
}

/// One tag parsed on its own, as produced by `browse ... as timeml`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fragment {
    Event(Event, Option<String>),
    Instance(EventInstance),
    Timex(Timex3, Option<String>),
    Signal(Signal, Option<String>),
    Link(Link),
}

fn event_from(node: Node<'_, '_>, span: Option<Span>, w: &mut Vec<LoadWarning>) -> Option<Event> {
    Some(Event {
        eid: required(node, "eid", w)?,
        attrs: attributes(node, &["eid"]),
        span,
    })
}

fn instance_from(node: Node<'_, '_>, w: &mut Vec<LoadWarning>) -> Option<EventInstance> {
    Some(EventInstance {
        eiid: required(node, "eiid", w)?,
        event_id: required(node, "eventID", w)?,
        signal_id: optional(node, "signalID"),
        attrs: attributes(node, &["eiid", "eventID", "signalID"]),
    })
}

fn timex_from(node: Node<'_, '_>, span: Option<Span>, w: &mut Vec<LoadWarning>) -> Option<Timex3> {
    Some(Timex3 {
        tid: required(node, "tid", w)?,
        attrs: attributes(node, &["tid"]),
        span,
    })
}

fn signal_from(node: Node<'_, '_>, span: Option<Span>, w: &mut Vec<LoadWarning>) -> Option<Signal> {
    Some(Signal {
        sid: required(node, "sid", w)?,
        attrs: attributes(node, &["sid"]),
        span,
    })
}

const ARG_ATTRIBUTES: [&str; 5] = [
    "eventInstanceID",
    "timeID",
    "relatedToEventInstance",
    "relatedToTime",
    "subordinatedEventInstance",
];

fn link_from(node: Node<'_, '_>, kind: LinkKind, w: &mut Vec<LoadWarning>) -> Option<Link> {
    let lid = required(node, "lid", w)?;
    let raw_rel = required(node, "relType", w)?;
    let rel_type = match kind {
        LinkKind::Tlink => match raw_rel.parse::<RelationType>() {
            Ok(r) => RelType::Temporal(r),
            Err(_) => {
                w.push(LoadWarning(format!(
                    "TLINK {lid} has unknown relType {raw_rel}; skipped"
                )));
                return None;
            }
        },
        _ => RelType::Other(raw_rel),
    };
    let arg1 = match (kind, optional(node, "eventInstanceID"), optional(node, "timeID")) {
        (_, Some(ei), _) => IntervalRef::instance(ei),
        (LinkKind::Tlink, None, Some(t)) => IntervalRef::timex(t),
        _ => {
            w.push(LoadWarning(format!(
                "{} {lid} has no first argument; skipped",
                kind.tag_name()
            )));
            return None;
        }
    };
    let arg2 = match kind {
        LinkKind::Tlink => match (
            optional(node, "relatedToEventInstance"),
            optional(node, "relatedToTime"),
        ) {
            (Some(ei), _) => Some(IntervalRef::instance(ei)),
            (None, Some(t)) => Some(IntervalRef::timex(t)),
            _ => None,
        },
        LinkKind::Slink => optional(node, "subordinatedEventInstance").map(IntervalRef::instance),
        LinkKind::Alink => optional(node, "relatedToEventInstance").map(IntervalRef::instance),
    };
    let Some(arg2) = arg2 else {
        w.push(LoadWarning(format!(
            "{} {lid} has no second argument; skipped",
            kind.tag_name()
        )));
        return None;
    };
    let mut skip: Vec<&str> = vec!["lid", "relType", "signalID"];
    skip.extend(ARG_ATTRIBUTES);
    let mut link = Link {
        lid,
        kind,
        rel_type,
        arg1,
        arg2,
        signal_id: optional(node, "signalID"),
        attrs: attributes(node, &skip),
    };
    // argument attributes this link does not use stay as plain attributes
    let used = [link.arg1_attribute(), link.arg2_attribute()];
    for name in ARG_ATTRIBUTES {
        if !used.contains(&name) {
            if let Some(v) = node.attribute(name) {
                link.attrs.insert(name.to_string(), v.to_string());
            }
        }
    }
    Some(link)
}

fn link_kind(name: &str) -> Option<LinkKind> {
    match name {
        "TLINK" => Some(LinkKind::Tlink),
        "SLINK" => Some(LinkKind::Slink),
        "ALINK" => Some(LinkKind::Alink),
        _ => None,
    }
}

struct Walker {
    doc: Document,
    tokens: Tokenizer,
}

impl Walker {
    fn walk(&mut self, node: Node<'_, '_>, text_root: Node<'_, '_>, inside: bool) {
        let inside = inside || node == text_root;
        if node.is_text() {
            if inside {
                self.tokens.push_text(node.text().unwrap_or_default());
            }
            return;
        }
        if !node.is_element() {
            return;
        }
        let name = node.tag_name().name();
        if inside && name.eq_ignore_ascii_case("s") {
            self.tokens.sentence_break();
        }
        let start = self.tokens.len();
        for child in node.children() {
            self.walk(child, text_root, inside);
        }
        let span = inside.then(|| Span {
            start,
            end: self.tokens.len(),
        });
        let w = &mut self.doc.warnings;
        match name {
            "EVENT" => {
                if let Some(e) = event_from(node, span, w) {
                    self.doc.events.push(e);
                }
            }
            "TIMEX3" => {
                if let Some(t) = timex_from(node, span, w) {
                    self.doc.timexes.push(t);
                }
            }
            "SIGNAL" => {
                if let Some(s) = signal_from(node, span, w) {
                    self.doc.signals.push(s);
                }
            }
            "MAKEINSTANCE" => {
                if let Some(i) = instance_from(node, w) {
                    self.doc.instances.push(i);
                }
            }
            other => {
                if let Some(kind) = link_kind(other) {
                    if let Some(l) = link_from(node, kind, w) {
                        self.doc.links.push(l);
                    }
                }
            }
        }
    }
}

/// Records references that do not resolve and duplicate ids. None of these
/// stop the load.
fn reference_warnings(doc: &Document) -> Vec<LoadWarning> {
    use std::collections::BTreeSet;
    let mut out = Vec::new();
    let mut dup = |family: &str, ids: &mut dyn Iterator<Item = &str>| {
        let mut seen = BTreeSet::new();
        for id in ids {
            if !seen.insert(id.to_string()) {
                out.push(LoadWarning(format!("duplicate {family} id {id}")));
            }
        }
    };
    dup("EVENT", &mut doc.events.iter().map(|e| e.eid.as_str()));
    dup("MAKEINSTANCE", &mut doc.instances.iter().map(|i| i.eiid.as_str()));
    dup("TIMEX3", &mut doc.timexes.iter().map(|t| t.tid.as_str()));
    dup("SIGNAL", &mut doc.signals.iter().map(|s| s.sid.as_str()));
    for i in &doc.instances {
        if doc.event(&i.event_id).is_none() {
            out.push(LoadWarning(format!(
                "MAKEINSTANCE {} references missing EVENT {}",
                i.eiid, i.event_id
            )));
        }
        if let Some(sid) = &i.signal_id {
            if doc.signal(sid).is_none() {
                out.push(LoadWarning(format!(
                    "MAKEINSTANCE {} references missing SIGNAL {}",
                    i.eiid, sid
                )));
            }
        }
    }
    for l in &doc.links {
        for arg in [&l.arg1, &l.arg2] {
            if !doc.interval_exists(arg) {
                out.push(LoadWarning(format!(
                    "{} {} references missing {}",
                    l.kind.tag_name(),
                    l.lid,
                    arg.id
                )));
            }
        }
        if let Some(sid) = &l.signal_id {
            if doc.signal(sid).is_none() {
                out.push(LoadWarning(format!(
                    "{} {} references missing SIGNAL {}",
                    l.kind.tag_name(),
                    l.lid,
                    sid
                )));
            }
        }
    }
    out
}

/// Parses one TimeML document from text. Tokens come from the `TEXT` element
/// when there is one, otherwise from the whole file; tags outside it (such as
/// the creation-time TIMEX3) have no span.
pub fn parse_str(doc_id: u32, filename: &str, xml: &str) -> Result<Document, String> {
    let tree = roxmltree::Document::parse_with_options(xml, xml_options()).map_err(|e| e.to_string())?;
    let root = tree.root_element();
    let text_root = root.descendants().find(|n| n.has_tag_name("TEXT")).unwrap_or(root);
    let mut walker = Walker {
        doc: Document::new(doc_id, filename),
        tokens: Tokenizer::new(),
    };
    walker.walk(root, text_root, false);
    let mut doc = walker.doc;
    doc.tokens = walker.tokens.finish();
    let refs = reference_warnings(&doc);
    doc.warnings.extend(refs);
    Ok(doc)
}

pub fn parse_document(path: &Path, doc_id: u32) -> Result<Document, IngestError> {
    let text = fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let filename = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_str(doc_id, &filename, &text).map_err(|message| IngestError::Malformed {
        path: path.to_path_buf(),
        message,
    })
}

/// Parses a single tag written by `browse ... as timeml`.
pub fn parse_fragment(xml: &str) -> Result<Fragment, String> {
    let tree = roxmltree::Document::parse_with_options(xml, xml_options()).map_err(|e| e.to_string())?;
    let node = tree.root_element();
    let text = node.text().map(str::to_string);
    let mut w = Vec::new();
    let fragment = match node.tag_name().name() {
        "EVENT" => event_from(node, None, &mut w).map(|e| Fragment::Event(e, text)),
        "MAKEINSTANCE" => instance_from(node, &mut w).map(Fragment::Instance),
        "TIMEX3" => timex_from(node, None, &mut w).map(|t| Fragment::Timex(t, text)),
        "SIGNAL" => signal_from(node, None, &mut w).map(|s| Fragment::Signal(s, text)),
        other => match link_kind(other) {
            Some(kind) => link_from(node, kind, &mut w).map(Fragment::Link),
            None => return Err(format!("`{other}` is not a TimeML tag")),
        },
    };
    fragment.ok_or_else(|| w.into_iter().map(|x| x.0).collect::<Vec<_>>().join("; "))
}

fn looks_like_xml(text: &str) -> bool {
    text.trim_start_matches('\u{feff}').trim_start().starts_with('<')
}

/// Parses every regular file in `dir` (not recursive), numbering documents
/// from 1 in filename order, and applies `fold`.
pub fn import_corpus(dir: &Path, name: &str, fold: &FoldScheme) -> Result<Imported, IngestError> {
    if !dir.is_dir() {
        return Err(IngestError::NotADirectory(dir.to_path_buf()));
    }
    let io_err = |source| IngestError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(io_err)? {
        let entry = entry.map_err(io_err)?;
        let path = entry.path();
        if path.is_file() {
            files.push((entry.file_name().to_string_lossy().into_owned(), path));
        }
    }
    files.sort();

    let mut documents = Vec::new();
    let mut skipped = Vec::new();
    for (file, path) in files {
        let bytes = fs::read(&path).map_err(|source| IngestError::Io {
            path: path.clone(),
            source,
        })?;
        let Ok(text) = String::from_utf8(bytes) else {
            skipped.push(Skipped {
                file,
                reason: "not UTF-8 text".into(),
                is_error: false,
            });
            continue;
        };
        if !looks_like_xml(&text) {
            skipped.push(Skipped {
                file,
                reason: "not an XML file".into(),
                is_error: false,
            });
            continue;
        }
        let doc_id = documents.len() as u32 + 1;
        match parse_str(doc_id, &file, &text) {
            Ok(doc) => documents.push(apply_fold(doc, fold)),
            Err(message) => skipped.push(Skipped {
                file,
                reason: format!("malformed XML: {message}"),
                is_error: true,
            }),
        }
    }
    if documents.is_empty() {
        return Err(IngestError::NoDocuments(dir.to_path_buf()));
    }
    let corpus = Corpus {
        name: name.to_string(),
        note: format!("fold={}", fold.name.as_str()),
        documents,
    };
    Ok(Imported { corpus, skipped })
}
