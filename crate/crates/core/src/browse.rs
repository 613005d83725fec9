//! Document selection, single-tag views and TLINK context excerpts.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::check::suggestion_suffix;
use crate::model::{
    link_signal_text, span_position, Attributes, Corpus, DocIndex, DocKey, Document, IntervalKind, IntervalRef, Link,
    Span,
};
use crate::query::Tag;
use crate::report::csv_field;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TagFormat {
    #[default]
    Screen,
    Csv,
    Timeml,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BrowseError {
    #[error("no document `{key}` in corpus{}", suggestion_suffix(.suggestions))]
    UnknownDocument { key: String, suggestions: Vec<String> },
    #[error("no {tag} with id `{id}` in {document}")]
    UnknownTag { tag: Tag, id: String, document: String },
    #[error("no link with id `{lid}` in {document}")]
    UnknownLink { lid: String, document: String },
}

fn levenshtein(a: &str, b: &str) -> usize {
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, ca) in a.chars().enumerate() {
        cur[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Up to three candidates close to `key`, nearest first.
pub fn nearest_matches<'a>(key: &str, candidates: impl IntoIterator<Item = &'a str>) -> Vec<String> {
    let key_lower = key.to_ascii_lowercase();
    let limit = (key.chars().count() / 3).max(2);
    let mut scored: Vec<(usize, &str)> = candidates
        .into_iter()
        .filter_map(|c| {
            let lower = c.to_ascii_lowercase();
            let d = levenshtein(&key_lower, &lower);
            if d <= limit {
                Some((d, c))
            } else if !key_lower.is_empty() && lower.contains(&key_lower) {
                Some((limit + 1, c))
            } else {
                None
            }
        })
        .collect();
    scored.sort_unstable();
    scored.dedup();
    scored.into_iter().take(3).map(|(_, c)| c.to_string()).collect()
}

pub fn select_document<'a>(corpus: &'a Corpus, key: &DocKey) -> Result<&'a Document, BrowseError> {
    corpus.document(key).ok_or_else(|| BrowseError::UnknownDocument {
        key: key.to_string(),
        suggestions: nearest_matches(&key.to_string(), corpus.documents.iter().map(|d| d.filename.as_str())),
    })
}

/// A tag as it would appear in TimeML: element name, attributes in canonical
/// order and optional text content.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TagRecord {
    pub element: String,
    pub attrs: Vec<(String, String)>,
    pub text: Option<String>,
}

fn sorted_attrs(attrs: &Attributes) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = attrs.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    out.sort_by(|a, b| {
        a.0.to_ascii_lowercase()
            .cmp(&b.0.to_ascii_lowercase())
            .then_with(|| a.0.cmp(&b.0))
    });
    out
}

fn with_rest(mut head: Vec<(String, String)>, mut rest: Vec<(String, String)>) -> Vec<(String, String)> {
    rest.sort_by(|a, b| {
        a.0.to_ascii_lowercase()
            .cmp(&b.0.to_ascii_lowercase())
            .then_with(|| a.0.cmp(&b.0))
    });
    head.extend(rest);
    head
}

fn pair(k: &str, v: &str) -> (String, String) {
    (k.to_string(), v.to_string())
}

fn span_text(doc: &Document, span: Option<Span>) -> Option<String> {
    span.map(|s| doc.span_text(s))
}

/// Canonical attribute order: id first, then the rest alphabetically
/// (case-insensitive). Links put relType and the two argument attributes
/// right after the id.
pub fn link_record(link: &Link) -> TagRecord {
    let mut rest = sorted_attrs(&link.attrs);
    if let Some(sid) = &link.signal_id {
        rest.push(pair("signalID", sid));
    }
    let head = vec![
        pair("lid", &link.lid),
        pair("relType", &link.rel_type.to_string()),
        pair(link.arg1_attribute(), &link.arg1.id),
        pair(link.arg2_attribute(), &link.arg2.id),
    ];
    TagRecord {
        element: link.kind.tag_name().to_string(),
        attrs: with_rest(head, rest),
        text: None,
    }
}

pub fn tag_record(doc: &Document, tag: Tag, id: &str) -> Option<TagRecord> {
    match tag {
        Tag::Event => {
            let e = doc.event(id)?;
            Some(TagRecord {
                element: "EVENT".into(),
                attrs: with_rest(vec![pair("eid", &e.eid)], sorted_attrs(&e.attrs)),
                text: span_text(doc, e.span),
            })
        }
        Tag::Instance => {
            let i = doc.instance(id)?;
            let mut rest = sorted_attrs(&i.attrs);
            rest.push(pair("eventID", &i.event_id));
            if let Some(sid) = &i.signal_id {
                rest.push(pair("signalID", sid));
            }
            Some(TagRecord {
                element: "MAKEINSTANCE".into(),
                attrs: with_rest(vec![pair("eiid", &i.eiid)], rest),
                text: None,
            })
        }
        Tag::Timex3 => {
            let t = doc.timex(id)?;
            Some(TagRecord {
                element: "TIMEX3".into(),
                attrs: with_rest(vec![pair("tid", &t.tid)], sorted_attrs(&t.attrs)),
                text: span_text(doc, t.span),
            })
        }
        Tag::Signal => {
            let s = doc.signal(id)?;
            Some(TagRecord {
                element: "SIGNAL".into(),
                attrs: with_rest(vec![pair("sid", &s.sid)], sorted_attrs(&s.attrs)),
                text: span_text(doc, s.span),
            })
        }
        Tag::Tlink | Tag::Slink | Tag::Alink => {
            let kind = tag.link_kind();
            doc.links
                .iter()
                .find(|l| l.lid == id && Some(l.kind) == kind)
                .map(link_record)
        }
    }
}

pub fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

impl TagRecord {
    pub fn to_timeml(&self) -> String {
        let mut out = format!("<{}", self.element);
        for (k, v) in &self.attrs {
            let _ = write!(out, " {}=\"{}\"", k, xml_escape(v));
        }
        match &self.text {
            Some(text) => {
                let _ = write!(out, ">{}</{}>", xml_escape(text), self.element);
            }
            None => out.push_str("/>"),
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut names: Vec<String> = self.attrs.iter().map(|(k, _)| csv_field(k)).collect();
        let mut values: Vec<String> = self.attrs.iter().map(|(_, v)| csv_field(v)).collect();
        if let Some(text) = &self.text {
            names.push("text".into());
            values.push(csv_field(text));
        }
        format!("{}\n{}\n", names.join(","), values.join(","))
    }

    fn screen_lines(&self, out: &mut String) {
        let _ = writeln!(out, "{} {}", self.element, self.attrs[0].1);
        if let Some(text) = &self.text {
            let _ = writeln!(out, "  text: {text}");
        }
        for (k, v) in &self.attrs[1..] {
            let _ = writeln!(out, "  {k}: {v}");
        }
    }
}

fn interval_label(doc: &Document, interval: &IntervalRef) -> String {
    match doc.interval_text(interval) {
        Some(text) => format!("{} \"{}\"", interval.id, text),
        None if doc.interval_exists(interval) => interval.id.clone(),
        None => format!("{} (unresolved)", interval.id),
    }
}

fn screen(doc: &Document, tag: Tag, id: &str, record: &TagRecord) -> String {
    let mut out = String::new();
    match tag {
        Tag::Event | Tag::Timex3 | Tag::Signal => {
            record.screen_lines(&mut out);
            let span = match tag {
                Tag::Event => doc.event(id).and_then(|e| e.span),
                Tag::Timex3 => doc.timex(id).and_then(|t| t.span),
                _ => doc.signal(id).and_then(|s| s.span),
            };
            if let Some((s, w)) = span_position(doc, span) {
                let _ = writeln!(out, "  position: sentence {s}, word {w}");
            }
            if tag == Tag::Event {
                for inst in doc.instances.iter().filter(|i| i.event_id == id) {
                    let rec = tag_record(doc, Tag::Instance, &inst.eiid).expect("instance exists");
                    let attrs: Vec<String> = rec.attrs[1..].iter().map(|(k, v)| format!("{k}={v}")).collect();
                    let _ = writeln!(out, "  MAKEINSTANCE {}: {}", inst.eiid, attrs.join(" "));
                }
            }
        }
        Tag::Instance => {
            record.screen_lines(&mut out);
            let index = DocIndex::new(doc);
            if let Some(event) = doc.instance(id).and_then(|i| index.event_of(i)) {
                let text = span_text(doc, event.span).unwrap_or_default();
                let _ = writeln!(out, "  EVENT {}: \"{}\"", event.eid, text);
            }
        }
        Tag::Tlink | Tag::Slink | Tag::Alink => {
            let link = doc
                .links
                .iter()
                .find(|l| l.lid == id && Some(l.kind) == tag.link_kind())
                .expect("link exists");
            let _ = writeln!(out, "{} {}", record.element, link.lid);
            let _ = writeln!(out, "  relType: {}", link.rel_type);
            let _ = writeln!(out, "  {}: {}", link.arg1_attribute(), interval_label(doc, &link.arg1));
            let _ = writeln!(out, "  {}: {}", link.arg2_attribute(), interval_label(doc, &link.arg2));
            if let Some(sid) = &link.signal_id {
                match link_signal_text(doc, link) {
                    Some(text) => {
                        let _ = writeln!(out, "  signalID: {sid} \"{text}\"");
                    }
                    None => {
                        let _ = writeln!(out, "  signalID: {sid}");
                    }
                }
            }
            for (k, v) in sorted_attrs(&link.attrs) {
                let _ = writeln!(out, "  {k}: {v}");
            }
        }
    }
    out
}

pub fn render_tag(doc: &Document, tag: Tag, id: &str, format: TagFormat) -> Result<String, BrowseError> {
    let record = tag_record(doc, tag, id).ok_or_else(|| BrowseError::UnknownTag {
        tag,
        id: id.to_string(),
        document: doc.filename.clone(),
    })?;
    Ok(match format {
        TagFormat::Screen => screen(doc, tag, id, &record),
        TagFormat::Csv => record.to_csv(),
        TagFormat::Timeml => {
            let mut s = record.to_timeml();
            s.push('\n');
            s
        }
    })
}

/// Sentences holding the link's arguments, with argument spans in brackets,
/// followed by the relation line and any notes.
pub fn link_context(doc: &Document, lid: &str) -> Result<String, BrowseError> {
    let link = doc.link(lid).ok_or_else(|| BrowseError::UnknownLink {
        lid: lid.to_string(),
        document: doc.filename.clone(),
    })?;
    let mut notes = Vec::new();
    let mut spans = Vec::new();
    for arg in [&link.arg1, &link.arg2] {
        if !doc.interval_exists(arg) {
            notes.push(format!("note: {} does not resolve to any tag in this document", arg.id));
            continue;
        }
        match doc
            .interval_span(arg)
            .filter(|s| !s.is_empty() && s.end <= doc.tokens.len())
        {
            Some(span) => spans.push(span),
            None => {
                let what = match arg.kind {
                    IntervalKind::Timex => "TIMEX3",
                    IntervalKind::EventInstance => "MAKEINSTANCE",
                };
                notes.push(format!(
                    "note: {} {} has no position in the document body",
                    what, arg.id
                ));
            }
        }
    }
    let sentences: BTreeSet<u32> = spans.iter().map(|s| doc.tokens[s.start].sentence).collect();
    let mut out = String::new();
    for sentence in sentences {
        let mut words = Vec::new();
        for (i, tok) in doc.tokens.iter().enumerate().filter(|(_, t)| t.sentence == sentence) {
            let opens = spans.iter().filter(|s| s.start == i).count();
            let closes = spans.iter().filter(|s| s.end == i + 1).count();
            words.push(format!("{}{}{}", "[".repeat(opens), tok.surface, "]".repeat(closes)));
        }
        let _ = writeln!(out, "sentence {}: {}", sentence, words.join(" "));
    }
    let _ = writeln!(
        out,
        "{} {}: {} {} {}",
        link.kind.tag_name(),
        link.lid,
        interval_label(doc, &link.arg1),
        link.rel_type,
        interval_label(doc, &link.arg2)
    );
    if let Some(text) = link_signal_text(doc, link) {
        let _ = writeln!(out, "signal: {text}");
    }
    for note in notes {
        let _ = writeln!(out, "{note}");
    }
    Ok(out)
}
