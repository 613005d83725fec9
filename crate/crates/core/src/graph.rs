//! Structural checks over the TLINK graph: fracture statistics, self-loops and
//! orphaned entities.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::finding::{CheckFinding, Severity};
use crate::model::{DocIndex, Document, IntervalKind, IntervalRef, Link, LinkKind};

/// A connected group of intervals and the number of TLINKs describing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub intervals: BTreeSet<IntervalRef>,
    pub tlinks: usize,
}

/// Groups TLINK arguments into connected sets, processing links in order.
///
/// Both arguments already in one set: nothing changes. One found: the other
/// joins its set. Found in different sets: the later set merges into the
/// earlier. Neither found: a new set holding both. A self-loop on an unseen
/// interval therefore yields a singleton.
pub fn build_subgraphs(doc: &Document) -> Vec<Subgraph> {
    let mut sets: Vec<Option<Subgraph>> = Vec::new();
    let mut home: BTreeMap<IntervalRef, usize> = BTreeMap::new();
    for link in doc.tlinks() {
        let found = (home.get(&link.arg1).copied(), home.get(&link.arg2).copied());
        let target = match found {
            (Some(i), Some(j)) if i == j => i,
            (Some(i), Some(j)) => {
                let (keep, gone) = (i.min(j), i.max(j));
                let moved = sets[gone].take().expect("live set");
                for iv in &moved.intervals {
                    home.insert(iv.clone(), keep);
                }
                let kept = sets[keep].as_mut().expect("live set");
                kept.intervals.extend(moved.intervals);
                kept.tlinks += moved.tlinks;
                keep
            }
            (Some(i), None) => {
                home.insert(link.arg2.clone(), i);
                sets[i].as_mut().expect("live set").intervals.insert(link.arg2.clone());
                i
            }
            (None, Some(j)) => {
                home.insert(link.arg1.clone(), j);
                sets[j].as_mut().expect("live set").intervals.insert(link.arg1.clone());
                j
            }
            (None, None) => {
                let idx = sets.len();
                let intervals: BTreeSet<IntervalRef> = [link.arg1.clone(), link.arg2.clone()].into_iter().collect();
                for iv in &intervals {
                    home.insert(iv.clone(), idx);
                }
                sets.push(Some(Subgraph { intervals, tlinks: 0 }));
                idx
            }
        };
        sets[target].as_mut().expect("live set").tlinks += 1;
    }
    sets.into_iter().flatten().collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubgraphReport {
    pub subgraph_count: usize,
    pub node_count: usize,
    pub tlink_count: usize,
    /// Sub-graphs described by exactly one TLINK.
    pub isolated_count: usize,
    pub isolated_subgraph_pct: f64,
    pub isolated_node_pct: f64,
    pub isolated_tlink_pct: f64,
    pub mean_size: f64,
    pub max_size: usize,
    pub largest_node_pct: f64,
    pub entropy: f64,
    pub size_histogram: BTreeMap<usize, usize>,
}

fn pct(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        0.0
    } else {
        100.0 * part as f64 / whole as f64
    }
}

/// Normalized Shannon entropy of node-membership proportions:
/// `-sum(p_i ln p_i) / ln N` with `p_i = size_i / N`. Zero for a single
/// sub-graph or `N <= 1`.
pub fn size_entropy(sizes: &[usize]) -> f64 {
    let total: usize = sizes.iter().sum();
    if sizes.len() <= 1 || total <= 1 {
        return 0.0;
    }
    let n = total as f64;
    let h: f64 = sizes
        .iter()
        .filter(|&&s| s > 0)
        .map(|&s| {
            let p = s as f64 / n;
            -p * libm::log(p)
        })
        .sum();
    h / libm::log(n)
}

impl SubgraphReport {
    pub fn from_subgraphs(subgraphs: &[Subgraph]) -> Self {
        let sizes: Vec<usize> = subgraphs.iter().map(|s| s.intervals.len()).collect();
        let node_count: usize = sizes.iter().sum();
        let tlink_count: usize = subgraphs.iter().map(|s| s.tlinks).sum();
        let isolated: Vec<&Subgraph> = subgraphs.iter().filter(|s| s.tlinks == 1).collect();
        let isolated_nodes: usize = isolated.iter().map(|s| s.intervals.len()).sum();
        let max_size = sizes.iter().copied().max().unwrap_or(0);
        let mut size_histogram = BTreeMap::new();
        for &s in &sizes {
            *size_histogram.entry(s).or_insert(0) += 1;
        }
        SubgraphReport {
            subgraph_count: subgraphs.len(),
            node_count,
            tlink_count,
            isolated_count: isolated.len(),
            isolated_subgraph_pct: pct(isolated.len(), subgraphs.len()),
            isolated_node_pct: pct(isolated_nodes, node_count),
            isolated_tlink_pct: pct(isolated.len(), tlink_count),
            mean_size: if subgraphs.is_empty() {
                0.0
            } else {
                node_count as f64 / subgraphs.len() as f64
            },
            max_size,
            largest_node_pct: pct(max_size, node_count),
            entropy: size_entropy(&sizes),
            size_histogram,
        }
    }

    pub fn is_fractured(&self) -> bool {
        self.subgraph_count > 1
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if self.subgraph_count == 0 {
            out.push_str("Subgraphs found: 0 - no TLINKs, document is un-fractured.");
            return out;
        }
        let _ = writeln!(
            out,
            "Subgraphs found: {} - composed of {} nodes and linked by {} TLINKS.",
            self.subgraph_count, self.node_count, self.tlink_count
        );
        let _ = writeln!(
            out,
            "Isolated subgraphs, that contain just one TLINK: {}",
            self.isolated_count
        );
        let _ = writeln!(
            out,
            " (making up {:.1}% of all subgraphs, {:.1}% of all nodes / described by {:.1}% of all TLINKs)",
            self.isolated_subgraph_pct, self.isolated_node_pct, self.isolated_tlink_pct
        );
        let _ = writeln!(
            out,
            "Mean graph size {:.1} nodes; largest subgraph (size {}) has {:.1}% of all nodes",
            self.mean_size, self.max_size, self.largest_node_pct
        );
        let _ = write!(out, "Entropy of subgraph sizes:  {:.12}", self.entropy);
        for (size, count) in &self.size_histogram {
            let _ = write!(out, "\n{:>5} nodes: ({:>2}) {}", size, count, ".".repeat(*count));
        }
        out
    }
}

pub fn subgraph_stats(doc: &Document) -> SubgraphReport {
    SubgraphReport::from_subgraphs(&build_subgraphs(doc))
}

pub const SPLIT_GRAPH: &str = "split_graph";
pub const TLINK_LOOP: &str = "tlink_loop";
pub const ORPHANS: &str = "orphans";

fn finding(check: &str, doc: &Document, severity: Severity, subjects: Vec<String>, message: String) -> CheckFinding {
    CheckFinding {
        check: check.to_string(),
        doc_id: doc.doc_id,
        document: doc.filename.clone(),
        severity,
        subjects,
        message,
    }
}

pub fn split_graph_findings(doc: &Document) -> Vec<CheckFinding> {
    let report = subgraph_stats(doc);
    vec![finding(SPLIT_GRAPH, doc, Severity::Info, Vec::new(), report.render())]
}

fn interval_noun(kind: IntervalKind) -> &'static str {
    match kind {
        IntervalKind::EventInstance => "event",
        IntervalKind::Timex => "timex",
    }
}

/// TLINKs whose arguments are the same interval (ERROR), or distinct
/// instances of the same EVENT (WARNING; these can be legitimate).
pub fn check_tlink_loop(doc: &Document) -> Vec<CheckFinding> {
    let index = DocIndex::new(doc);
    let mut out = Vec::new();
    for link in doc.tlinks() {
        let mut subjects = vec![link.lid.clone(), link.arg1.id.clone(), link.arg2.id.clone()];
        subjects.dedup();
        if link.arg1 == link.arg2 {
            let message = format!(
                "TLINK ID {} loops directly (instanceID match), type {}, {} {} / {}",
                link.lid,
                link.rel_type,
                interval_noun(link.arg1.kind),
                link.arg1.id,
                link.arg2.id
            );
            out.push(finding(TLINK_LOOP, doc, Severity::Error, subjects, message));
        } else if same_event(&index, link) {
            let message = format!(
                "TLINK ID {} may be a loop (eventID match), type {}, event {} / {} - check document manually",
                link.lid, link.rel_type, link.arg1.id, link.arg2.id
            );
            out.push(finding(TLINK_LOOP, doc, Severity::Warning, subjects, message));
        }
    }
    out
}

fn same_event(index: &DocIndex<'_>, link: &Link) -> bool {
    if link.arg1.kind != IntervalKind::EventInstance || link.arg2.kind != IntervalKind::EventInstance {
        return false;
    }
    match (
        index.instances.get(link.arg1.id.as_str()),
        index.instances.get(link.arg2.id.as_str()),
    ) {
        (Some(a), Some(b)) => !a.event_id.is_empty() && a.event_id == b.event_id,
        _ => false,
    }
}

/// The five orphan cases, in this order: unlinked TIMEX3s, unlinked
/// instances, uninstantiated EVENTs, instances of missing EVENTs, and signals
/// referenced by no link or instance.
pub fn check_orphans(doc: &Document) -> Vec<CheckFinding> {
    let index = DocIndex::new(doc);
    let linked: BTreeSet<&IntervalRef> = doc.links.iter().flat_map(|l| [&l.arg1, &l.arg2]).collect();
    let mut out = Vec::new();
    let mut push = |subject: &str, message: String| {
        out.push(finding(
            ORPHANS,
            doc,
            Severity::Error,
            vec![subject.to_string()],
            message,
        ));
    };
    for t in &doc.timexes {
        if !linked.contains(&IntervalRef::timex(t.tid.as_str())) {
            push(&t.tid, format!("TIMEX3 {} not in any link", t.tid));
        }
    }
    for i in &doc.instances {
        if !linked.contains(&IntervalRef::instance(i.eiid.as_str())) {
            push(&i.eiid, format!("MAKEINSTANCE {} not in any link", i.eiid));
        }
    }
    for e in &doc.events {
        if !index.instances_by_event.contains_key(e.eid.as_str()) {
            push(&e.eid, format!("EVENT {} never instantiated", e.eid));
        }
    }
    for i in &doc.instances {
        if index.event_of(i).is_none() {
            push(
                &i.eiid,
                format!("MAKEINSTANCE {} instantiates non-existent EVENT {}", i.eiid, i.event_id),
            );
        }
    }
    let signalled: BTreeSet<&str> = doc
        .links
        .iter()
        .filter_map(|l| l.signal_id.as_deref())
        .chain(doc.instances.iter().filter_map(|i| i.signal_id.as_deref()))
        .collect();
    for s in &doc.signals {
        if !signalled.contains(s.sid.as_str()) {
            push(
                &s.sid,
                format!("SIGNAL {} not referenced by any link or instance", s.sid),
            );
        }
    }
    out
}

/// Direct loops whose relation is not an equality type; these always make a
/// document inconsistent.
pub fn is_inconsistent_loop(link: &Link) -> bool {
    link.kind == LinkKind::Tlink && link.arg1 == link.arg2 && link.rel_type.temporal().is_some_and(|r| !r.is_equality())
}
