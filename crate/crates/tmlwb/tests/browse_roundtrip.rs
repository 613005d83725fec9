use tmlwb::fixtures::committed_dir;
use tmlwb::ingest::{import_corpus, parse_fragment, Fragment};
use tmlwb_core::browse::{render_tag, TagFormat};
use tmlwb_core::fold::FoldScheme;
use tmlwb_core::query::Tag;
use tmlwb_core::{Document, LinkKind};

fn text_of(doc: &Document, span: Option<tmlwb_core::Span>) -> Option<String> {
    span.map(|s| doc.span_text(s)).filter(|t| !t.is_empty())
}

/// Every tag in the fixture corpus, rendered as TimeML, parses back to the
/// same record.
#[test]
fn timeml_output_reparses_to_equal_tags() {
    let corpus = import_corpus(&committed_dir(), "fx", &FoldScheme::none())
        .unwrap()
        .corpus;
    let mut checked = 0;
    for doc in &corpus.documents {
        let render = |tag: Tag, id: &str| {
            let xml = render_tag(doc, tag, id, TagFormat::Timeml).unwrap();
            parse_fragment(xml.trim_end()).unwrap_or_else(|e| panic!("{}: {xml}: {e}", doc.filename))
        };
        for e in &doc.events {
            let Fragment::Event(parsed, text) = render(Tag::Event, &e.eid) else {
                panic!()
            };
            assert_eq!(parsed.eid, e.eid);
            assert_eq!(parsed.attrs, e.attrs);
            assert_eq!(text, text_of(doc, e.span));
            checked += 1;
        }
        for i in &doc.instances {
            assert_eq!(render(Tag::Instance, &i.eiid), Fragment::Instance(i.clone()));
            checked += 1;
        }
        for t in &doc.timexes {
            let Fragment::Timex(parsed, text) = render(Tag::Timex3, &t.tid) else {
                panic!()
            };
            assert_eq!((&parsed.tid, &parsed.attrs), (&t.tid, &t.attrs));
            if t.span.is_some() {
                assert_eq!(text, text_of(doc, t.span));
            }
            checked += 1;
        }
        for s in &doc.signals {
            let Fragment::Signal(parsed, text) = render(Tag::Signal, &s.sid) else {
                panic!()
            };
            assert_eq!((&parsed.sid, &parsed.attrs), (&s.sid, &s.attrs));
            assert_eq!(text, text_of(doc, s.span));
            checked += 1;
        }
        for l in &doc.links {
            let tag = match l.kind {
                LinkKind::Tlink => Tag::Tlink,
                LinkKind::Slink => Tag::Slink,
                LinkKind::Alink => Tag::Alink,
            };
            assert_eq!(render(tag, &l.lid), Fragment::Link(l.clone()));
            checked += 1;
        }
    }
    let total: usize = corpus
        .documents
        .iter()
        .map(|d| d.tag_counts().iter().sum::<usize>())
        .sum();
    assert_eq!(checked, total);
}
