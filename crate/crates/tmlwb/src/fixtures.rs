//! Synthetic TimeML test corpus.
//!
//! Every file is built from fixed ids in a fixed order, so regeneration is
//! byte-identical. The committed copy lives in `fixtures/corpus/`.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use tmlwb_core::RelationType;

const DCT: &str = r#"<TIMEX3 tid="t0" type="DATE" value="1998-03-04" temporalFunction="false" functionInDocument="CREATION_TIME">03/04/1998</TIMEX3>"#;

struct Builder {
    docid: &'static str,
    dct: bool,
    text: String,
    tail: String,
}

impl Builder {
    fn new(docid: &'static str, dct: bool) -> Self {
        Builder {
            docid,
            dct,
            text: String::new(),
            tail: String::new(),
        }
    }

    fn words(&mut self, s: &str) -> &mut Self {
        if !self.text.is_empty() && !self.text.ends_with('\n') && !s.starts_with(['.', ',']) {
            self.text.push(' ');
        }
        self.text.push_str(s);
        self
    }

    fn event(&mut self, eid: &str, class: &str, word: &str) -> &mut Self {
        self.words(&format!(r#"<EVENT eid="{eid}" class="{class}">{word}</EVENT>"#))
    }

    fn timex(&mut self, tid: &str, kind: &str, value: &str, text: &str) -> &mut Self {
        self.words(&format!(
            r#"<TIMEX3 tid="{tid}" type="{kind}" value="{value}">{text}</TIMEX3>"#
        ))
    }

    fn signal(&mut self, sid: &str, text: &str) -> &mut Self {
        self.words(&format!(r#"<SIGNAL sid="{sid}">{text}</SIGNAL>"#))
    }

    fn end_sentence(&mut self) -> &mut Self {
        self.text.push_str(" .\n");
        self
    }

    fn instance(&mut self, eiid: &str, eid: &str, tense: &str, aspect: &str, pos: &str) -> &mut Self {
        let _ = writeln!(
            self.tail,
            r#"<MAKEINSTANCE eiid="{eiid}" eventID="{eid}" tense="{tense}" aspect="{aspect}" polarity="POS" pos="{pos}"/>"#
        );
        self
    }

    fn tlink(&mut self, lid: &str, rel: RelationType, a: &str, b: &str, signal: Option<&str>) -> &mut Self {
        let arg = |id: &str, first: bool| {
            let name = match (id.starts_with('t'), first) {
                (true, true) => "timeID",
                (true, false) => "relatedToTime",
                (false, true) => "eventInstanceID",
                (false, false) => "relatedToEventInstance",
            };
            format!(r#"{name}="{id}""#)
        };
        let sig = signal.map(|s| format!(r#" signalID="{s}""#)).unwrap_or_default();
        let _ = writeln!(
            self.tail,
            r#"<TLINK lid="{lid}" relType="{rel}" {} {}{sig}/>"#,
            arg(a, true),
            arg(b, false)
        );
        self
    }

    fn raw_tail(&mut self, line: &str) -> &mut Self {
        self.tail.push_str(line);
        self.tail.push('\n');
        self
    }

    fn build(&self) -> String {
        let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<TimeML>\n");
        let _ = writeln!(out, "<DOCID>{}</DOCID>", self.docid);
        if self.dct {
            let _ = writeln!(out, "<DCT>{DCT}</DCT>");
        }
        out.push_str("<TEXT>\n");
        out.push_str(&self.text);
        out.push_str("</TEXT>\n");
        out.push_str(&self.tail);
        out.push_str("</TimeML>\n");
        out
    }
}

use RelationType as R;

/// Clean document: consistent, one connected graph, no loops, no orphans.
/// Also carries one SLINK and one ALINK.
fn consistent() -> String {
    let mut b = Builder::new("consistent", true);
    b.words("Prices")
        .event("e1", "OCCURRENCE", "rose")
        .signal("s1", "before")
        .words("the market")
        .event("e2", "OCCURRENCE", "closed")
        .words("on")
        .timex("t1", "DATE", "1998-03-03", "Tuesday")
        .end_sentence();
    b.words("Traders")
        .event("e5", "REPORTING", "said")
        .words("they had")
        .event("e3", "OCCURRENCE", "sold")
        .words("shares")
        .signal("s2", "prior to")
        .words("the")
        .event("e4", "OCCURRENCE", "announcement")
        .end_sentence();
    b.words("Brokers")
        .event("e6", "ASPECTUAL", "began")
        .event("e7", "OCCURRENCE", "trading")
        .words("again")
        .end_sentence();
    b.instance("ei1", "e1", "PAST", "NONE", "VERB")
        .instance("ei2", "e2", "PAST", "NONE", "VERB")
        .instance("ei3", "e3", "PAST", "PERFECTIVE", "VERB")
        .instance("ei4", "e4", "NONE", "NONE", "NOUN")
        .instance("ei5", "e5", "PAST", "NONE", "VERB")
        .instance("ei6", "e6", "PAST", "NONE", "VERB")
        .instance("ei7", "e7", "NONE", "PROGRESSIVE", "VERB");
    b.tlink("l1", R::Before, "ei1", "ei2", Some("s1"))
        .tlink("l2", R::IsIncluded, "ei2", "t1", None)
        .tlink("l3", R::Before, "ei3", "ei4", Some("s2"))
        .tlink("l4", R::Before, "ei4", "ei1", None)
        .tlink("l5", R::Before, "t1", "t0", None)
        .tlink("l6", R::After, "ei6", "ei4", None)
        .tlink("l7", R::Includes, "t0", "ei5", None)
        .raw_tail(r#"<SLINK lid="l8" relType="EVIDENTIAL" eventInstanceID="ei5" subordinatedEventInstance="ei3"/>"#)
        .raw_tail(r#"<ALINK lid="l9" relType="INITIATES" eventInstanceID="ei6" relatedToEventInstance="ei7"/>"#);
    b.build()
}

/// `A BEFORE B` with `B INCLUDES A`: contradicts without inference.
fn conflict_direct() -> String {
    let mut b = Builder::new("conflict_direct", false);
    b.words("Shares").event("e1", "OCCURRENCE", "fell").end_sentence();
    b.words("Later the index")
        .event("e2", "OCCURRENCE", "rallied")
        .end_sentence();
    b.instance("ei1", "e1", "PAST", "NONE", "VERB")
        .instance("ei2", "e2", "PAST", "NONE", "VERB");
    b.tlink("l1", R::Before, "ei1", "ei2", None)
        .tlink("l2", R::Includes, "ei2", "ei1", None);
    b.build()
}

/// `A SIMULTANEOUS B`, `B BEFORE C`, `C BEFORE A`: only inconsistent once
/// equal points substitute into `<` assertions.
fn conflict_inferred() -> String {
    let mut b = Builder::new("conflict_inferred", false);
    b.words("The bank")
        .event("e1", "OCCURRENCE", "merged")
        .words("as rivals")
        .event("e2", "OCCURRENCE", "bid")
        .end_sentence();
    b.words("Regulators")
        .event("e3", "OCCURRENCE", "objected")
        .end_sentence();
    b.instance("ei1", "e1", "PAST", "NONE", "VERB")
        .instance("ei2", "e2", "PAST", "NONE", "VERB")
        .instance("ei3", "e3", "PAST", "NONE", "VERB");
    b.tlink("l1", R::Simultaneous, "ei1", "ei2", None)
        .tlink("l2", R::Before, "ei2", "ei3", None)
        .tlink("l3", R::Before, "ei3", "ei1", None);
    b.build()
}

/// `A IDENTITY A`: consistent, but a direct loop.
fn identity_loop() -> String {
    let mut b = Builder::new("identity_loop", true);
    b.words("The")
        .event("e1", "OCCURRENCE", "meeting")
        .words("ended")
        .end_sentence();
    b.instance("ei1", "e1", "NONE", "NONE", "NOUN");
    b.tlink("l1", R::Identity, "ei1", "ei1", None)
        .tlink("l2", R::IsIncluded, "ei1", "t0", None);
    b.build()
}

/// Two instances of one event linked to each other.
fn event_loop() -> String {
    let mut b = Builder::new("event_loop", true);
    b.words("Officials")
        .event("e30", "REPORTING", "said")
        .words("on")
        .timex("t1", "DATE", "1998-03-03", "Tuesday")
        .end_sentence();
    b.instance("ei286", "e30", "PAST", "NONE", "VERB")
        .instance("ei288", "e30", "PAST", "NONE", "VERB");
    b.tlink("l23", R::Includes, "ei286", "ei288", None)
        .tlink("l24", R::IsIncluded, "ei286", "t1", None)
        .tlink("l25", R::Before, "t1", "t0", None);
    b.build()
}

/// One instance of each orphan case and nothing else wrong.
fn orphans() -> String {
    let mut b = Builder::new("orphans", true);
    b.words("Oil")
        .event("e1", "OCCURRENCE", "rose")
        .words("and gas")
        .event("e2", "OCCURRENCE", "fell")
        .end_sentence();
    b.words("Analysts")
        .event("e5", "REPORTING", "spoke")
        .words("on")
        .timex("t104", "DATE", "1998-03-02", "Monday")
        .end_sentence();
    b.words("Nobody")
        .event("e6", "OCCURRENCE", "noticed")
        .signal("s2", "until")
        .words("later")
        .end_sentence();
    b.instance("ei1", "e1", "PAST", "NONE", "VERB")
        .instance("ei2", "e2", "PAST", "NONE", "VERB")
        .instance("ei5", "e5", "PAST", "NONE", "VERB")
        .instance("ei7", "e99", "PAST", "NONE", "VERB");
    b.tlink("l1", R::Before, "ei1", "ei2", None)
        .tlink("l2", R::Before, "ei7", "ei1", None)
        .tlink("l3", R::Before, "ei2", "t0", None);
    b.build()
}

/// Two disjoint pairs: sub-graph sizes {2, 2}, entropy 0.5.
fn fractured() -> String {
    let mut b = Builder::new("fractured", false);
    b.words("Sales")
        .event("e1", "OCCURRENCE", "grew")
        .words("after costs")
        .event("e2", "OCCURRENCE", "dropped")
        .end_sentence();
    b.words("Staff")
        .event("e3", "OCCURRENCE", "left")
        .words("before the plant")
        .event("e4", "OCCURRENCE", "closed")
        .end_sentence();
    for k in 1..=4 {
        b.instance(&format!("ei{k}"), &format!("e{k}"), "PAST", "NONE", "VERB");
    }
    b.tlink("l1", R::After, "ei1", "ei2", None)
        .tlink("l2", R::Before, "ei3", "ei4", None);
    b.build()
}

const VERBS: [&str; 28] = [
    "rose",
    "fell",
    "said",
    "bought",
    "sold",
    "closed",
    "opened",
    "rallied",
    "slipped",
    "gained",
    "lost",
    "traded",
    "reported",
    "announced",
    "agreed",
    "merged",
    "filed",
    "paid",
    "raised",
    "cut",
    "hired",
    "fired",
    "signed",
    "ended",
    "began",
    "moved",
    "held",
    "won",
];

/// Every relation type once, each link on its own pair of intervals.
fn all_relations() -> String {
    let mut b = Builder::new("all_relations", false);
    for (k, _) in RelationType::ALL.iter().enumerate() {
        let (x, y) = (2 * k + 1, 2 * k + 2);
        b.words("The firm")
            .event(&format!("e{x}"), "OCCURRENCE", VERBS[x - 1])
            .words("and")
            .event(&format!("e{y}"), "OCCURRENCE", VERBS[y - 1])
            .end_sentence();
    }
    for n in 1..=28 {
        b.instance(&format!("ei{n}"), &format!("e{n}"), "PAST", "NONE", "VERB");
    }
    for (k, rel) in RelationType::ALL.iter().enumerate() {
        b.tlink(
            &format!("l{}", k + 1),
            *rel,
            &format!("ei{}", 2 * k + 1),
            &format!("ei{}", 2 * k + 2),
            None,
        );
    }
    b.build()
}

/// Sub-graph sizes 2 x5, 3 x4, 4 x3 and 35 x1: 13 sub-graphs, 69 nodes, 65
/// TLINKs, five isolated. Every component is a BEFORE chain; the large one
/// carries nine extra skip links.
fn wsj_shape() -> String {
    let mut b = Builder::new("wsj_shape", true);
    let sizes: Vec<usize> = [2; 5].into_iter().chain([3; 4]).chain([4; 3]).chain([35]).collect();
    let mut next_event = 1;
    let mut next_link = 1;
    let mut components = Vec::new();
    for size in sizes {
        // the large component ends at the creation time
        let events = if size == 35 { size - 1 } else { size };
        let mut ids = Vec::new();
        b.words("Then");
        for _ in 0..events {
            let n = next_event;
            next_event += 1;
            b.event(&format!("e{n}"), "OCCURRENCE", VERBS[(n - 1) % VERBS.len()]);
            ids.push(format!("ei{n}"));
        }
        b.end_sentence();
        if size == 35 {
            ids.push("t0".to_string());
        }
        components.push(ids);
    }
    for n in 1..next_event {
        b.instance(&format!("ei{n}"), &format!("e{n}"), "PAST", "NONE", "VERB");
    }
    for ids in &components {
        let mut link = |b: &mut Builder, x: &str, y: &str| {
            b.tlink(&format!("l{next_link}"), R::Before, x, y, None);
            next_link += 1;
        };
        for w in ids.windows(2) {
            link(&mut b, &w[0], &w[1]);
        }
        if ids.len() == 35 {
            for i in 0..9 {
                link(&mut b, &ids[i], &ids[i + 2]);
            }
        }
    }
    b.build()
}

/// File names and contents, in import order.
pub fn fixture_files() -> Vec<(&'static str, String)> {
    vec![
        ("all_relations.tml", all_relations()),
        ("conflict_direct.tml", conflict_direct()),
        ("conflict_inferred.tml", conflict_inferred()),
        ("consistent.tml", consistent()),
        ("event_loop.tml", event_loop()),
        ("fractured.tml", fractured()),
        ("identity_loop.tml", identity_loop()),
        ("orphans.tml", orphans()),
        ("wsj_shape.tml", wsj_shape()),
    ]
}

pub fn generate_fixtures(dir: &Path) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, text) in fixture_files() {
        let path = dir.join(name);
        fs::write(&path, text)?;
        written.push(path);
    }
    Ok(written)
}

/// The committed fixture directory.
pub fn committed_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join("corpus")
}
