//! The `show` report engine: list, distribution and state reports over one
//! tag family, with an optional `where` filter and derived attributes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::model::{
    attr, event_value, instance_value, is_instance_attribute, link_signal_text, span_position, DocIndex, Document,
    Event, EventInstance, Link, LinkKind, Signal, Span, Timex3,
};
use crate::report::{Distribution, Format, ListReport, Report, ReportRow, ReportTitle, StateCounts, StateReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportKind {
    List,
    Distribution,
    State,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tag {
    Event,
    Instance,
    Timex3,
    Signal,
    Tlink,
    Slink,
    Alink,
}

const INSTANCE_FIELDS: &[&str] = &[
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
const EVENT_FIELDS: &[&str] = &["eid", "class", "text", "lemma", "sentence", "word"];
const TIMEX_FIELDS: &[&str] = &[
    "tid",
    "type",
    "value",
    "mod",
    "temporalfunction",
    "functionindocument",
    "anchortimeid",
    "beginpoint",
    "endpoint",
    "quant",
    "freq",
    "text",
    "lemma",
    "sentence",
    "word",
];
const SIGNAL_FIELDS: &[&str] = &["sid", "text", "lemma", "sentence", "word"];
const LINK_FIELDS: &[&str] = &[
    "lid",
    "reltype",
    "arg1",
    "arg2",
    "signalid",
    "signaltext",
    "origin",
    "syntax",
];
const TLINK_ATTRS: &[&str] = &["eventinstanceid", "timeid", "relatedtoeventinstance", "relatedtotime"];
const SLINK_ATTRS: &[&str] = &["eventinstanceid", "subordinatedeventinstance"];
const ALINK_ATTRS: &[&str] = &["eventinstanceid", "relatedtoeventinstance"];

impl Tag {
    pub const ALL: [Tag; 7] = [
        Tag::Event,
        Tag::Instance,
        Tag::Timex3,
        Tag::Signal,
        Tag::Tlink,
        Tag::Slink,
        Tag::Alink,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Tag::Event => "event",
            Tag::Instance => "instance",
            Tag::Timex3 => "timex3",
            Tag::Signal => "signal",
            Tag::Tlink => "tlink",
            Tag::Slink => "slink",
            Tag::Alink => "alink",
        }
    }

    /// Capitalized name used in report titles.
    pub fn title(self) -> &'static str {
        match self {
            Tag::Event => "Event",
            Tag::Instance => "Instance",
            Tag::Timex3 => "Timex3",
            Tag::Signal => "Signal",
            Tag::Tlink => "Tlink",
            Tag::Slink => "Slink",
            Tag::Alink => "Alink",
        }
    }

    /// Fields accepted for this tag, including derived ones.
    pub fn fields(self) -> Vec<&'static str> {
        let parts: &[&[&str]] = match self {
            Tag::Event | Tag::Instance => &[EVENT_FIELDS, INSTANCE_FIELDS],
            Tag::Timex3 => &[TIMEX_FIELDS],
            Tag::Signal => &[SIGNAL_FIELDS],
            Tag::Tlink => &[LINK_FIELDS, TLINK_ATTRS],
            Tag::Slink => &[LINK_FIELDS, SLINK_ATTRS],
            Tag::Alink => &[LINK_FIELDS, ALINK_ATTRS],
        };
        parts.iter().flat_map(|p| p.iter().copied()).collect()
    }

    pub fn link_kind(self) -> Option<LinkKind> {
        match self {
            Tag::Tlink => Some(LinkKind::Tlink),
            Tag::Slink => Some(LinkKind::Slink),
            Tag::Alink => Some(LinkKind::Alink),
            _ => None,
        }
    }
}

impl FromStr for Tag {
    type Err = QueryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        let lower = match lower.as_str() {
            "timex" => "timex3",
            "makeinstance" => "instance",
            other => other,
        };
        Tag::ALL
            .iter()
            .copied()
            .find(|t| t.keyword() == lower)
            .ok_or_else(|| QueryError::UnknownTag(s.to_string()))
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    Is(String),
    IsNot(String),
    Filled,
    Unfilled,
}

impl Predicate {
    fn matches(&self, value: Option<&str>) -> bool {
        match self {
            Predicate::Is(v) => value.is_some_and(|x| x.eq_ignore_ascii_case(v)),
            Predicate::IsNot(v) => !value.is_some_and(|x| x.eq_ignore_ascii_case(v)),
            Predicate::Filled => value.is_some(),
            Predicate::Unfilled => value.is_none(),
        }
    }

    pub fn negated(&self) -> Predicate {
        match self {
            Predicate::Is(v) => Predicate::IsNot(v.clone()),
            Predicate::IsNot(v) => Predicate::Is(v.clone()),
            Predicate::Filled => Predicate::Unfilled,
            Predicate::Unfilled => Predicate::Filled,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filter {
    pub field: String,
    pub predicate: Predicate,
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.predicate {
            Predicate::Is(v) => write!(f, "where {} is {}", self.field, v),
            Predicate::IsNot(v) => write!(f, "where {} is not {}", self.field, v),
            Predicate::Filled => write!(f, "where {} is filled", self.field),
            Predicate::Unfilled => write!(f, "where {} is not filled", self.field),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Granularity {
    #[default]
    Corpus,
    Document,
    Sentence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub report: ReportKind,
    pub tag: Tag,
    /// Lowercase field name, validated against the tag.
    pub field: String,
    pub filter: Option<Filter>,
    pub granularity: Granularity,
    /// Distribution rows below this frequency fold into one `Other values` row.
    pub min_freq: Option<usize>,
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum QueryError {
    #[error("unknown tag `{0}`; expected one of event, instance, timex3, signal, tlink, slink, alink")]
    UnknownTag(String),
    #[error("`{field}` is not a field of {tag}; valid fields: {valid}")]
    UnknownField { tag: Tag, field: String, valid: String },
}

/// Validates and lowercases a field name for `tag`.
pub fn validate_field(tag: Tag, field: &str) -> Result<String, QueryError> {
    let lower = field.to_ascii_lowercase();
    let fields = tag.fields();
    if fields.contains(&lower.as_str()) {
        Ok(lower)
    } else {
        let mut valid = fields;
        valid.sort_unstable();
        Err(QueryError::UnknownField {
            tag,
            field: field.to_string(),
            valid: valid.join(", "),
        })
    }
}

impl Query {
    pub fn new(report: ReportKind, tag: Tag, field: &str) -> Result<Self, QueryError> {
        Ok(Query {
            report,
            tag,
            field: validate_field(tag, field)?,
            filter: None,
            granularity: Granularity::Corpus,
            min_freq: None,
            format: Format::Screen,
        })
    }

    pub fn with_filter(mut self, field: &str, predicate: Predicate) -> Result<Self, QueryError> {
        self.filter = Some(Filter {
            field: validate_field(self.tag, field)?,
            predicate,
        });
        Ok(self)
    }

    fn title(&self) -> ReportTitle {
        ReportTitle {
            tag: self.tag.title().to_string(),
            field: self.field.clone(),
            filter: self.filter.as_ref().map(ToString::to_string),
            group_label: match self.granularity {
                Granularity::Corpus => None,
                Granularity::Document => Some("Document".to_string()),
                Granularity::Sentence => Some("Sentence".to_string()),
            },
        }
    }

    /// Event-tag queries touching an instance attribute count instances.
    fn instance_mode(&self) -> bool {
        match self.tag {
            Tag::Instance => true,
            Tag::Event => {
                is_instance_attribute(&self.field)
                    || self.filter.as_ref().is_some_and(|f| is_instance_attribute(&f.field))
            }
            _ => false,
        }
    }
}

/// A tag occurrence with enough context to resolve any field.
enum Occurrence<'a> {
    Event(&'a Event),
    Instance(&'a EventInstance),
    Timex(&'a Timex3),
    Signal(&'a Signal),
    Link(&'a Link),
}

fn nonempty(v: Option<String>) -> Option<String> {
    v.filter(|s| !s.trim().is_empty())
}

fn spanned_value(doc: &Document, span: Option<Span>, attrs: &crate::model::Attributes, field: &str) -> Option<String> {
    match field {
        "text" => span.map(|s| doc.span_text(s)),
        "lemma" => span.map(|s| doc.span_lemma(s)),
        "sentence" => span_position(doc, span).map(|(s, _)| format!("{s}")),
        "word" => span_position(doc, span).map(|(_, w)| format!("{w}")),
        _ => attr(attrs, field).map(ToString::to_string),
    }
}

impl<'a> Occurrence<'a> {
    fn value(&self, doc: &'a Document, index: &DocIndex<'a>, field: &str) -> Option<String> {
        let v = match self {
            Occurrence::Event(e) => event_value(doc, e, field),
            Occurrence::Instance(i) => {
                if is_instance_attribute(field) {
                    instance_value(i, field)
                } else {
                    index.event_of(i).and_then(|e| event_value(doc, e, field))
                }
            }
            Occurrence::Timex(t) => match field {
                "tid" => Some(t.tid.clone()),
                _ => spanned_value(doc, t.span, &t.attrs, field),
            },
            Occurrence::Signal(s) => match field {
                "sid" => Some(s.sid.clone()),
                _ => spanned_value(doc, s.span, &s.attrs, field),
            },
            Occurrence::Link(l) => link_value(doc, l, field),
        };
        nonempty(v)
    }

    fn sentence(&self, doc: &'a Document, index: &DocIndex<'a>) -> Option<u32> {
        let span = match self {
            Occurrence::Event(e) => e.span,
            Occurrence::Instance(i) => index.event_of(i).and_then(|e| e.span),
            Occurrence::Timex(t) => t.span,
            Occurrence::Signal(s) => s.span,
            Occurrence::Link(l) => doc.interval_span(&l.arg1),
        };
        span_position(doc, span).map(|(s, _)| s)
    }
}

fn link_value(doc: &Document, link: &Link, field: &str) -> Option<String> {
    match field {
        "lid" => Some(link.lid.clone()),
        "reltype" => Some(link.rel_type.to_string()),
        "arg1" => Some(link.arg1.id.clone()),
        "arg2" => Some(link.arg2.id.clone()),
        "signalid" => link.signal_id.clone(),
        "signaltext" => link_signal_text(doc, link),
        name if link.arg1_attribute().eq_ignore_ascii_case(name) => Some(link.arg1.id.clone()),
        name if link.arg2_attribute().eq_ignore_ascii_case(name) => Some(link.arg2.id.clone()),
        name if TLINK_ATTRS.contains(&name) || SLINK_ATTRS.contains(&name) || ALINK_ATTRS.contains(&name) => None,
        other => attr(&link.attrs, other).map(ToString::to_string),
    }
}

/// Grouping key: document position, then sentence.
type GroupKey = (usize, Option<u32>);

struct Item {
    group: GroupKey,
    label: Option<String>,
    value: Option<String>,
}

fn occurrences<'a>(doc: &'a Document, query: &Query) -> Vec<Occurrence<'a>> {
    match query.tag {
        Tag::Event if query.instance_mode() => doc.instances.iter().map(Occurrence::Instance).collect(),
        Tag::Event => doc.events.iter().map(Occurrence::Event).collect(),
        Tag::Instance => doc.instances.iter().map(Occurrence::Instance).collect(),
        Tag::Timex3 => doc.timexes.iter().map(Occurrence::Timex).collect(),
        Tag::Signal => doc.signals.iter().map(Occurrence::Signal).collect(),
        Tag::Tlink | Tag::Slink | Tag::Alink => {
            let kind = query.tag.link_kind();
            doc.links
                .iter()
                .filter(|l| Some(l.kind) == kind)
                .map(Occurrence::Link)
                .collect()
        }
    }
}

/// Occurrences passing the filter, with their field value and group.
fn items(docs: &[Document], query: &Query) -> Vec<Item> {
    let mut out = Vec::new();
    for (pos, doc) in docs.iter().enumerate() {
        let index = DocIndex::new(doc);
        for occ in occurrences(doc, query) {
            if let Some(filter) = &query.filter {
                let v = occ.value(doc, &index, &filter.field);
                if !filter.predicate.matches(v.as_deref()) {
                    continue;
                }
            }
            let (group, label) = match query.granularity {
                Granularity::Corpus => ((0, None), None),
                Granularity::Document => ((pos, None), Some(doc.filename.clone())),
                Granularity::Sentence => {
                    let s = occ.sentence(doc, &index);
                    let label = match s {
                        Some(n) => format!("{}#{}", doc.filename, n),
                        None => format!("{}#-", doc.filename),
                    };
                    ((pos, s), Some(label))
                }
            };
            out.push(Item {
                group,
                label,
                value: occ.value(doc, &index, &query.field),
            });
        }
    }
    out
}

fn grouped(items: Vec<Item>) -> BTreeMap<GroupKey, (Option<String>, Vec<Option<String>>)> {
    let mut groups: BTreeMap<GroupKey, (Option<String>, Vec<Option<String>>)> = BTreeMap::new();
    for item in items {
        groups
            .entry(item.group)
            .or_insert_with(|| (item.label, Vec::new()))
            .1
            .push(item.value);
    }
    groups
}

pub const OTHER_ROW: &str = "Other values";

pub fn report_distribution(docs: &[Document], query: &Query) -> Distribution {
    let mut rows = Vec::new();
    let mut total = 0;
    for (_, (label, values)) in grouped(items(docs, query)) {
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        for v in values.into_iter().flatten() {
            *counts.entry(v).or_insert(0) += 1;
        }
        let group_total: usize = counts.values().sum();
        if group_total == 0 {
            continue;
        }
        total += group_total;
        let mut group_rows: Vec<(String, usize)> = counts.into_iter().collect();
        group_rows.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        let mut other = 0;
        if let Some(min) = query.min_freq {
            group_rows.retain(|(_, n)| {
                if *n < min {
                    other += n;
                    false
                } else {
                    true
                }
            });
        }
        if other > 0 {
            group_rows.push((OTHER_ROW.to_string(), other));
        }
        rows.extend(group_rows.into_iter().map(|(value, frequency)| ReportRow {
            group: label.clone(),
            value,
            frequency,
            proportion: frequency as f64 / group_total as f64,
        }));
    }
    Distribution {
        title: query.title(),
        rows,
        total,
    }
}

pub fn report_state(docs: &[Document], query: &Query) -> StateReport {
    let groups = grouped(items(docs, query));
    let mut counts: Vec<StateCounts> = groups
        .into_values()
        .map(|(label, values)| {
            let filled = values.iter().filter(|v| v.is_some()).count();
            StateCounts {
                group: label,
                filled,
                unfilled: values.len() - filled,
            }
        })
        .collect();
    if counts.is_empty() && query.granularity == Granularity::Corpus {
        counts.push(StateCounts {
            group: None,
            filled: 0,
            unfilled: 0,
        });
    }
    StateReport {
        title: query.title(),
        counts,
    }
}

pub fn report_list(docs: &[Document], query: &Query) -> ListReport {
    let mut values = Vec::new();
    for (_, (label, group_values)) in grouped(items(docs, query)) {
        let distinct: BTreeSet<String> = group_values.into_iter().flatten().collect();
        values.extend(distinct.into_iter().map(|v| (label.clone(), v)));
    }
    ListReport {
        title: query.title(),
        values,
    }
}

pub fn run_query(docs: &[Document], query: &Query) -> Report {
    match query.report {
        ReportKind::List => Report::List(report_list(docs, query)),
        ReportKind::Distribution => Report::Distribution(report_distribution(docs, query)),
        ReportKind::State => Report::State(report_state(docs, query)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Attributes, IntervalRef, RelationType as R, Token};
    use alloc::vec;

    fn tok(s: u32, w: u32, surface: &str) -> Token {
        Token {
            sentence: s,
            word: w,
            surface: surface.into(),
            lemma: surface.to_ascii_lowercase(),
        }
    }

    fn attrs(pairs: &[(&str, &str)]) -> Attributes {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    fn corpus() -> Vec<Document> {
        let mut d = Document::new(1, "a.tml");
        d.tokens = vec![
            tok(0, 0, "$1"),
            tok(0, 1, "rose"),
            tok(0, 2, "before"),
            tok(1, 0, "fell"),
        ];
        d.events.push(Event {
            eid: "e1".into(),
            attrs: attrs(&[("class", "OCCURRENCE")]),
            span: Some(Span { start: 0, end: 1 }),
        });
        d.events.push(Event {
            eid: "e2".into(),
            attrs: attrs(&[("class", "STATE")]),
            span: Some(Span { start: 1, end: 2 }),
        });
        d.events.push(Event {
            eid: "e3".into(),
            attrs: attrs(&[("class", "OCCURRENCE")]),
            span: Some(Span { start: 3, end: 4 }),
        });
        for (eiid, eid, pos) in [
            ("ei1", "e1", "OTHER"),
            ("ei2", "e2", "VERB"),
            ("ei3", "e3", "VERB"),
            ("ei4", "e3", "VERB"),
        ] {
            d.instances.push(EventInstance {
                eiid: eiid.into(),
                event_id: eid.into(),
                signal_id: None,
                attrs: attrs(&[("pos", pos)]),
            });
        }
        d.signals.push(Signal {
            sid: "s1".into(),
            attrs: Attributes::new(),
            span: Some(Span { start: 2, end: 3 }),
        });
        let mut l1 = Link::tlink(
            "l1",
            R::Before,
            IntervalRef::instance("ei1"),
            IntervalRef::instance("ei2"),
        );
        l1.signal_id = Some("s1".into());
        d.links.push(l1);
        d.links.push(Link::tlink(
            "l2",
            R::After,
            IntervalRef::instance("ei3"),
            IntervalRef::instance("ei2"),
        ));
        d.links.push(Link::tlink(
            "l3",
            R::Before,
            IntervalRef::instance("ei2"),
            IntervalRef::timex("t1"),
        ));
        let mut e = Document::new(2, "b.tml");
        e.links.push(Link::tlink(
            "l1",
            R::Includes,
            IntervalRef::timex("t1"),
            IntervalRef::timex("t2"),
        ));
        vec![d, e]
    }

    #[test]
    fn event_pos_counts_instances() {
        let q = Query::new(ReportKind::Distribution, Tag::Event, "pos").unwrap();
        let d = report_distribution(&corpus(), &q);
        assert_eq!(d.total, 4);
        assert_eq!((d.rows[0].value.as_str(), d.rows[0].frequency), ("VERB", 3));
        assert_eq!((d.rows[1].value.as_str(), d.rows[1].frequency), ("OTHER", 1));
        let sum: f64 = d.rows.iter().map(|r| r.proportion).sum();
        assert!((sum - 1.0).abs() < 1e-9);
    }

    #[test]
    fn event_class_counts_events() {
        let q = Query::new(ReportKind::Distribution, Tag::Event, "class").unwrap();
        assert_eq!(report_distribution(&corpus(), &q).total, 3);
    }

    #[test]
    fn ties_sort_by_value() {
        let q = Query::new(ReportKind::Distribution, Tag::Tlink, "reltype").unwrap();
        let d = report_distribution(&corpus(), &q);
        let got: Vec<(&str, usize)> = d.rows.iter().map(|r| (r.value.as_str(), r.frequency)).collect();
        assert_eq!(got, vec![("BEFORE", 2), ("AFTER", 1), ("INCLUDES", 1)]);
    }

    #[test]
    fn list_of_event_text_where_pos_is_other() {
        let q = Query::new(ReportKind::List, Tag::Event, "text")
            .unwrap()
            .with_filter("pos", Predicate::Is("other".into()))
            .unwrap();
        let l = report_list(&corpus(), &q);
        assert_eq!(l.values, vec![(None, "$1".to_string())]);
    }

    #[test]
    fn list_is_distinct_and_sorted() {
        let q = Query::new(ReportKind::List, Tag::Tlink, "reltype").unwrap();
        let values: Vec<String> = report_list(&corpus(), &q).values.into_iter().map(|(_, v)| v).collect();
        assert_eq!(values, vec!["AFTER", "BEFORE", "INCLUDES"]);
    }

    #[test]
    fn state_with_filter() {
        let q = Query::new(ReportKind::State, Tag::Tlink, "signalid")
            .unwrap()
            .with_filter("reltype", Predicate::Is("before".into()))
            .unwrap();
        let s = report_state(&corpus(), &q);
        assert_eq!((s.filled(), s.unfilled()), (1, 1));
    }

    #[test]
    fn signal_text_distribution() {
        let q = Query::new(ReportKind::Distribution, Tag::Tlink, "signaltext").unwrap();
        let d = report_distribution(&corpus(), &q);
        assert_eq!(d.total, 1);
        assert_eq!(d.rows[0].value, "before");
    }

    #[test]
    fn unfilled_filter() {
        let q = Query::new(ReportKind::Distribution, Tag::Tlink, "reltype")
            .unwrap()
            .with_filter("signalid", Predicate::Unfilled)
            .unwrap();
        assert_eq!(report_distribution(&corpus(), &q).total, 3);
    }

    #[test]
    fn empty_corpus() {
        let q = Query::new(ReportKind::Distribution, Tag::Tlink, "reltype").unwrap();
        let d = report_distribution(&[], &q);
        assert!(d.rows.is_empty());
        assert_eq!(d.total, 0);
        let s = report_state(&[], &Query::new(ReportKind::State, Tag::Tlink, "signalid").unwrap());
        assert_eq!((s.filled(), s.unfilled()), (0, 0));
        assert!(
            report_list(&[], &Query::new(ReportKind::List, Tag::Tlink, "reltype").unwrap())
                .values
                .is_empty()
        );
    }

    #[test]
    fn by_document_groups() {
        let mut q = Query::new(ReportKind::Distribution, Tag::Tlink, "reltype").unwrap();
        q.granularity = Granularity::Document;
        let d = report_distribution(&corpus(), &q);
        assert_eq!(d.rows.len(), 3);
        assert_eq!(d.rows[2].group.as_deref(), Some("b.tml"));
        assert_eq!(d.rows[2].proportion, 1.0);
    }

    #[test]
    fn by_sentence_groups_links_by_first_argument() {
        let mut q = Query::new(ReportKind::List, Tag::Tlink, "lid").unwrap();
        q.granularity = Granularity::Sentence;
        let l = report_list(&corpus(), &q);
        let groups: Vec<&str> = l.values.iter().map(|(g, _)| g.as_deref().unwrap()).collect();
        assert_eq!(groups, vec!["a.tml#0", "a.tml#0", "a.tml#1", "b.tml#-"]);
    }

    #[test]
    fn min_freq_folds_rare_rows() {
        let mut q = Query::new(ReportKind::Distribution, Tag::Tlink, "reltype").unwrap();
        q.min_freq = Some(2);
        let d = report_distribution(&corpus(), &q);
        let got: Vec<(&str, usize)> = d.rows.iter().map(|r| (r.value.as_str(), r.frequency)).collect();
        assert_eq!(got, vec![("BEFORE", 2), (OTHER_ROW, 2)]);
    }

    #[test]
    fn arg_attribute_fields() {
        let q = Query::new(ReportKind::List, Tag::Tlink, "relatedToTime").unwrap();
        let values: Vec<String> = report_list(&corpus(), &q).values.into_iter().map(|(_, v)| v).collect();
        assert_eq!(values, vec!["t1", "t2"]);
    }

    #[test]
    fn invalid_field_names_valid_ones() {
        let err = Query::new(ReportKind::List, Tag::Signal, "pos").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("sid") && msg.contains("text"), "{msg}");
    }
}
