//! In-memory model of TimeML annotations.
//!
//! Every tag keeps its typed structural fields (ids and references) plus the
//! remaining attributes verbatim, so the original markup can be re-serialized.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// Attribute name to value, in name order.
pub type Attributes = BTreeMap<String, String>;

/// The fourteen TimeML temporal relation types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum RelationType {
    Before,
    After,
    #[cfg_attr(feature = "serde", serde(rename = "IBEFORE"))]
    IBefore,
    #[cfg_attr(feature = "serde", serde(rename = "IAFTER"))]
    IAfter,
    Includes,
    IsIncluded,
    Begins,
    BegunBy,
    Ends,
    EndedBy,
    Simultaneous,
    Identity,
    During,
    DuringInv,
}

impl RelationType {
    pub const ALL: [RelationType; 14] = [
        RelationType::Before,
        RelationType::After,
        RelationType::IBefore,
        RelationType::IAfter,
        RelationType::Includes,
        RelationType::IsIncluded,
        RelationType::Begins,
        RelationType::BegunBy,
        RelationType::Ends,
        RelationType::EndedBy,
        RelationType::Simultaneous,
        RelationType::Identity,
        RelationType::During,
        RelationType::DuringInv,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RelationType::Before => "BEFORE",
            RelationType::After => "AFTER",
            RelationType::IBefore => "IBEFORE",
            RelationType::IAfter => "IAFTER",
            RelationType::Includes => "INCLUDES",
            RelationType::IsIncluded => "IS_INCLUDED",
            RelationType::Begins => "BEGINS",
            RelationType::BegunBy => "BEGUN_BY",
            RelationType::Ends => "ENDS",
            RelationType::EndedBy => "ENDED_BY",
            RelationType::Simultaneous => "SIMULTANEOUS",
            RelationType::Identity => "IDENTITY",
            RelationType::During => "DURING",
            RelationType::DuringInv => "DURING_INV",
        }
    }

    /// Relation types whose point semantics are pure equalities.
    pub fn is_equality(self) -> bool {
        matches!(
            self,
            RelationType::Simultaneous | RelationType::Identity | RelationType::During | RelationType::DuringInv
        )
    }
}

impl fmt::Display for RelationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown relation type `{0}`")]
pub struct UnknownRelation(pub String);

impl FromStr for RelationType {
    type Err = UnknownRelation;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        RelationType::ALL
            .iter()
            .copied()
            .find(|r| r.as_str().eq_ignore_ascii_case(trimmed))
            .ok_or_else(|| UnknownRelation(trimmed.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "UPPERCASE"))]
pub enum LinkKind {
    Tlink,
    Slink,
    Alink,
}

impl LinkKind {
    pub fn tag_name(self) -> &'static str {
        match self {
            LinkKind::Tlink => "TLINK",
            LinkKind::Slink => "SLINK",
            LinkKind::Alink => "ALINK",
        }
    }
}

/// What an interval reference points at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum IntervalKind {
    EventInstance,
    Timex,
}

/// A link argument: an event instance (`eiid`) or a temporal expression (`tid`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct IntervalRef {
    pub kind: IntervalKind,
    pub id: String,
}

impl IntervalRef {
    pub fn instance(id: impl Into<String>) -> Self {
        IntervalRef {
            kind: IntervalKind::EventInstance,
            id: id.into(),
        }
    }

    pub fn timex(id: impl Into<String>) -> Self {
        IntervalRef {
            kind: IntervalKind::Timex,
            id: id.into(),
        }
    }
}

impl fmt::Display for IntervalRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}

/// Relation carried by a link. TLINKs use the closed temporal enumeration;
/// SLINK and ALINK relation types are kept as written.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum RelType {
    Temporal(RelationType),
    Other(String),
}

impl RelType {
    pub fn temporal(&self) -> Option<RelationType> {
        match self {
            RelType::Temporal(r) => Some(*r),
            RelType::Other(_) => None,
        }
    }
}

impl fmt::Display for RelType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelType::Temporal(r) => f.write_str(r.as_str()),
            RelType::Other(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum EventClass {
    Occurrence,
    IAction,
    IState,
    State,
    Reporting,
    Perception,
    Aspectual,
}

impl FromStr for EventClass {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "OCCURRENCE" => EventClass::Occurrence,
            "I_ACTION" => EventClass::IAction,
            "I_STATE" => EventClass::IState,
            "STATE" => EventClass::State,
            "REPORTING" => EventClass::Reporting,
            "PERCEPTION" => EventClass::Perception,
            "ASPECTUAL" => EventClass::Aspectual,
            _ => return Err(()),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Token {
    pub sentence: u32,
    pub word: u32,
    pub surface: String,
    pub lemma: String,
}

/// Half-open range of token indices into [`Document::tokens`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Event {
    pub eid: String,
    /// All attributes other than `eid`.
    pub attrs: Attributes,
    pub span: Option<Span>,
}

impl Event {
    pub fn class(&self) -> Option<EventClass> {
        attr(&self.attrs, "class").and_then(|c| c.parse().ok())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct EventInstance {
    pub eiid: String,
    /// May name an event missing from the document; that is an orphan, not a parse error.
    pub event_id: String,
    pub signal_id: Option<String>,
    /// All attributes other than `eiid`, `eventID` and `signalID`.
    pub attrs: Attributes,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Timex3 {
    pub tid: String,
    pub attrs: Attributes,
    pub span: Option<Span>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Signal {
    pub sid: String,
    pub attrs: Attributes,
    pub span: Option<Span>,
}

/// A TLINK, SLINK or ALINK with its arguments abstracted to `arg1`/`arg2`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Link {
    pub lid: String,
    pub kind: LinkKind,
    pub rel_type: RelType,
    pub arg1: IntervalRef,
    pub arg2: IntervalRef,
    pub signal_id: Option<String>,
    /// Attributes beyond the structural ones (`origin`, `syntax`, ...).
    pub attrs: Attributes,
}

impl Link {
    pub fn tlink(lid: impl Into<String>, rel: RelationType, arg1: IntervalRef, arg2: IntervalRef) -> Self {
        Link {
            lid: lid.into(),
            kind: LinkKind::Tlink,
            rel_type: RelType::Temporal(rel),
            arg1,
            arg2,
            signal_id: None,
            attrs: Attributes::new(),
        }
    }

    pub fn origin(&self) -> Option<&str> {
        attr(&self.attrs, "origin")
    }

    /// TimeML attribute name that carries argument `position` (1 or 2) for
    /// this link kind and interval kind.
    pub fn arg_attribute(kind: LinkKind, position: u8, interval: IntervalKind) -> &'static str {
        match (kind, position, interval) {
            (LinkKind::Tlink, 1, IntervalKind::Timex) => "timeID",
            (LinkKind::Tlink, _, IntervalKind::Timex) => "relatedToTime",
            (_, 1, _) => "eventInstanceID",
            (LinkKind::Slink, _, _) => "subordinatedEventInstance",
            (_, _, _) => "relatedToEventInstance",
        }
    }

    pub fn arg1_attribute(&self) -> &'static str {
        Link::arg_attribute(self.kind, 1, self.arg1.kind)
    }

    pub fn arg2_attribute(&self) -> &'static str {
        Link::arg_attribute(self.kind, 2, self.arg2.kind)
    }
}

/// A warning recorded while loading a document. Dangling references end up
/// here rather than failing the load.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct LoadWarning(pub String);

impl fmt::Display for LoadWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Document {
    pub doc_id: u32,
    pub filename: String,
    pub tokens: Vec<Token>,
    pub events: Vec<Event>,
    pub instances: Vec<EventInstance>,
    pub timexes: Vec<Timex3>,
    pub signals: Vec<Signal>,
    pub links: Vec<Link>,
    pub warnings: Vec<LoadWarning>,
}

impl Document {
    pub fn new(doc_id: u32, filename: impl Into<String>) -> Self {
        Document {
            doc_id,
            filename: filename.into(),
            ..Document::default()
        }
    }

    pub fn event(&self, eid: &str) -> Option<&Event> {
        self.events.iter().find(|e| e.eid == eid)
    }

    pub fn instance(&self, eiid: &str) -> Option<&EventInstance> {
        self.instances.iter().find(|i| i.eiid == eiid)
    }

    pub fn timex(&self, tid: &str) -> Option<&Timex3> {
        self.timexes.iter().find(|t| t.tid == tid)
    }

    pub fn signal(&self, sid: &str) -> Option<&Signal> {
        self.signals.iter().find(|s| s.sid == sid)
    }

    pub fn link(&self, lid: &str) -> Option<&Link> {
        self.links.iter().find(|l| l.lid == lid)
    }

    pub fn tlinks(&self) -> impl Iterator<Item = &Link> {
        self.links.iter().filter(|l| l.kind == LinkKind::Tlink)
    }

    /// Surface text of a span, tokens joined with single spaces.
    pub fn span_text(&self, span: Span) -> String {
        self.join_tokens(span, |t| &t.surface)
    }

    pub fn span_lemma(&self, span: Span) -> String {
        self.join_tokens(span, |t| &t.lemma)
    }

    fn join_tokens(&self, span: Span, field: impl Fn(&Token) -> &String) -> String {
        let end = span.end.min(self.tokens.len());
        let start = span.start.min(end);
        let mut out = String::new();
        for (i, tok) in self.tokens[start..end].iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(field(tok));
        }
        out
    }

    /// Span of the text an interval denotes: the timex itself, or the event
    /// an instance realizes.
    pub fn interval_span(&self, interval: &IntervalRef) -> Option<Span> {
        match interval.kind {
            IntervalKind::Timex => self.timex(&interval.id)?.span,
            IntervalKind::EventInstance => {
                let inst = self.instance(&interval.id)?;
                self.event(&inst.event_id)?.span
            }
        }
    }

    pub fn interval_exists(&self, interval: &IntervalRef) -> bool {
        match interval.kind {
            IntervalKind::Timex => self.timex(&interval.id).is_some(),
            IntervalKind::EventInstance => self.instance(&interval.id).is_some(),
        }
    }

    pub fn interval_text(&self, interval: &IntervalRef) -> Option<String> {
        self.interval_span(interval).map(|s| self.span_text(s))
    }

    /// Count of tags per family: events, instances, timexes, signals, links.
    pub fn tag_counts(&self) -> [usize; 5] {
        [
            self.events.len(),
            self.instances.len(),
            self.timexes.len(),
            self.signals.len(),
            self.links.len(),
        ]
    }
}

/// Lookup tables over one document, for passes that resolve many ids.
pub struct DocIndex<'a> {
    pub events: BTreeMap<&'a str, &'a Event>,
    pub instances: BTreeMap<&'a str, &'a EventInstance>,
    pub timexes: BTreeMap<&'a str, &'a Timex3>,
    pub signals: BTreeMap<&'a str, &'a Signal>,
    pub instances_by_event: BTreeMap<&'a str, Vec<&'a EventInstance>>,
}

impl<'a> DocIndex<'a> {
    pub fn new(doc: &'a Document) -> Self {
        let mut instances_by_event: BTreeMap<&str, Vec<&EventInstance>> = BTreeMap::new();
        for inst in &doc.instances {
            instances_by_event.entry(inst.event_id.as_str()).or_default().push(inst);
        }
        DocIndex {
            events: doc.events.iter().map(|e| (e.eid.as_str(), e)).collect(),
            instances: doc.instances.iter().map(|i| (i.eiid.as_str(), i)).collect(),
            timexes: doc.timexes.iter().map(|t| (t.tid.as_str(), t)).collect(),
            signals: doc.signals.iter().map(|s| (s.sid.as_str(), s)).collect(),
            instances_by_event,
        }
    }

    pub fn event_of(&self, inst: &EventInstance) -> Option<&'a Event> {
        self.events.get(inst.event_id.as_str()).copied()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Corpus {
    pub name: String,
    /// Free text; always records the fold applied at import as `fold=<name>`.
    pub note: String,
    pub documents: Vec<Document>,
}

impl Corpus {
    pub fn document(&self, key: &DocKey) -> Option<&Document> {
        match key {
            DocKey::Id(id) => self.documents.iter().find(|d| d.doc_id == *id),
            DocKey::Filename(name) => self.documents.iter().find(|d| d.filename == *name),
        }
    }

    /// The fold name recorded in the note, if any.
    pub fn fold(&self) -> Option<&str> {
        self.note.split_whitespace().find_map(|w| w.strip_prefix("fold="))
    }
}

/// A document reference as typed by a user: numeric id or filename.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DocKey {
    Id(u32),
    Filename(String),
}

impl DocKey {
    pub fn parse(s: &str) -> DocKey {
        match s.parse::<u32>() {
            Ok(id) => DocKey::Id(id),
            Err(_) => DocKey::Filename(s.to_string()),
        }
    }
}

impl fmt::Display for DocKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocKey::Id(id) => write!(f, "{id}"),
            DocKey::Filename(name) => f.write_str(name),
        }
    }
}

/// Case-insensitive attribute lookup.
pub fn attr<'a>(attrs: &'a Attributes, name: &str) -> Option<&'a str> {
    attrs
        .iter()
        .find(|(k, _)| k.eq_ignore_ascii_case(name))
        .map(|(_, v)| v.as_str())
}

const INSTANCE_ATTRIBUTES: &[&str] = &[
    "eiid",
    "eventid",
    "tense",
    "aspect",
    "polarity",
    "modality",
    "cardinality",
    "pos",
    "signalid",
];

const EVENT_ATTRIBUTES: &[&str] = &["eid", "class", "text", "lemma", "sentence", "word"];

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown event attribute `{name}`; valid attributes: {valid}")]
pub struct UnknownAttribute {
    pub name: String,
    pub valid: String,
}

/// Whether `name` is sourced from MAKEINSTANCE rather than EVENT.
pub fn is_instance_attribute(name: &str) -> bool {
    INSTANCE_ATTRIBUTES.iter().any(|a| a.eq_ignore_ascii_case(name))
}

pub fn is_event_attribute(name: &str) -> bool {
    EVENT_ATTRIBUTES.iter().any(|a| a.eq_ignore_ascii_case(name))
}

/// Instance-level value of an attribute.
pub fn instance_value(inst: &EventInstance, name: &str) -> Option<String> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "eiid" => Some(inst.eiid.clone()),
        "eventid" => Some(inst.event_id.clone()),
        "signalid" => inst.signal_id.clone(),
        _ => attr(&inst.attrs, &lower).map(ToString::to_string),
    }
}

/// Event-level value of an attribute (`text`, `lemma`, positions, `class`, ...).
pub fn event_value(doc: &Document, event: &Event, name: &str) -> Option<String> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "eid" => Some(event.eid.clone()),
        "text" => event.span.map(|s| doc.span_text(s)),
        "lemma" => event.span.map(|s| doc.span_lemma(s)),
        "sentence" => span_position(doc, event.span).map(|(s, _)| format!("{s}")),
        "word" => span_position(doc, event.span).map(|(_, w)| format!("{w}")),
        _ => attr(&event.attrs, &lower).map(ToString::to_string),
    }
}

/// Sentence and word index of a span's first token.
pub fn span_position(doc: &Document, span: Option<Span>) -> Option<(u32, u32)> {
    let span = span?;
    if span.is_empty() {
        return None;
    }
    doc.tokens.get(span.start).map(|t| (t.sentence, t.word))
}

/// Effective value of an event attribute for every instance in the document.
///
/// Instance attributes come from MAKEINSTANCE; text, class and positions come
/// from the referenced EVENT, and are absent when that event does not exist.
pub fn resolve_event_attribute<'a>(
    doc: &'a Document,
    attribute: &str,
) -> Result<Vec<(&'a EventInstance, Option<String>)>, UnknownAttribute> {
    if is_instance_attribute(attribute) {
        return Ok(doc
            .instances
            .iter()
            .map(|i| (i, instance_value(i, attribute)))
            .collect());
    }
    if !is_event_attribute(attribute) {
        let mut valid: Vec<&str> = INSTANCE_ATTRIBUTES.iter().chain(EVENT_ATTRIBUTES).copied().collect();
        valid.sort_unstable();
        return Err(UnknownAttribute {
            name: attribute.to_string(),
            valid: valid.join(", "),
        });
    }
    let index = DocIndex::new(doc);
    Ok(doc
        .instances
        .iter()
        .map(|i| {
            let value = index.event_of(i).and_then(|e| event_value(doc, e, attribute));
            (i, value)
        })
        .collect())
}

/// Text of the signal a link references, tokens joined with single spaces.
pub fn link_signal_text(doc: &Document, link: &Link) -> Option<String> {
    let sid = link.signal_id.as_deref()?;
    let span = doc.signal(sid)?.span?;
    Some(doc.span_text(span))
}
