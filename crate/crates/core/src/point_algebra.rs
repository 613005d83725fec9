//! Consistency checking of TLINK graphs over a point algebra with only `<` and
//! `=`.
//!
//! Each interval becomes a pair of endpoints constrained by `start < end`.
//! Every TLINK maps to one or two endpoint assertions, which are fed through an
//! agenda/database propagation loop. A document is consistent when the agenda
//! drains without any assertion contradicting the database.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::model::{Document, IntervalRef, Link, LinkKind, RelationType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    Start,
    End,
}

/// One endpoint of an interval, rendered `<id>_1` (start) or `<id>_2` (end).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimePoint {
    pub interval: IntervalRef,
    pub end: Endpoint,
}

impl TimePoint {
    pub fn start(interval: &IntervalRef) -> Self {
        TimePoint {
            interval: interval.clone(),
            end: Endpoint::Start,
        }
    }

    pub fn end(interval: &IntervalRef) -> Self {
        TimePoint {
            interval: interval.clone(),
            end: Endpoint::End,
        }
    }
}

impl fmt::Display for TimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self.end {
            Endpoint::Start => 1,
            Endpoint::End => 2,
        };
        write!(f, "{}_{}", self.interval.id, n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointRelation {
    Before,
    Equal,
}

/// `left < right` or `left = right`. Equalities are stored with the smaller
/// point on the left so assertion sets compare structurally.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointAssertion {
    pub left: TimePoint,
    pub right: TimePoint,
    pub rel: PointRelation,
}

impl PointAssertion {
    pub fn before(left: TimePoint, right: TimePoint) -> Self {
        PointAssertion {
            left,
            right,
            rel: PointRelation::Before,
        }
    }

    pub fn equal(a: TimePoint, b: TimePoint) -> Self {
        let (left, right) = if b < a { (b, a) } else { (a, b) };
        PointAssertion {
            left,
            right,
            rel: PointRelation::Equal,
        }
    }
}

impl fmt::Display for PointAssertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.rel {
            PointRelation::Before => "<",
            PointRelation::Equal => "=",
        };
        write!(f, "{} {} {}", self.left, op, self.right)
    }
}

/// `I_1 < I_2` for every interval.
pub fn interval_axioms<'a>(intervals: impl IntoIterator<Item = &'a IntervalRef>) -> Vec<PointAssertion> {
    intervals
        .into_iter()
        .map(|i| PointAssertion::before(TimePoint::start(i), TimePoint::end(i)))
        .collect()
}

/// Endpoint assertions for `a rel b`.
pub fn relation_assertions(rel: RelationType, a: &IntervalRef, b: &IntervalRef) -> Vec<PointAssertion> {
    use PointAssertion as P;
    use RelationType as R;
    let (a1, a2) = (TimePoint::start(a), TimePoint::end(a));
    let (b1, b2) = (TimePoint::start(b), TimePoint::end(b));
    match rel {
        R::Before => vec![P::before(a2, b1)],
        R::After => vec![P::before(b2, a1)],
        R::IAfter => vec![P::equal(b2, a1)],
        R::IBefore => vec![P::equal(a2, b1)],
        R::Includes => vec![P::before(a1, b1), P::before(b2, a2)],
        R::IsIncluded => vec![P::before(b1, a1), P::before(a2, b2)],
        R::Begins => vec![P::equal(a1, b1), P::before(a2, b2)],
        R::BegunBy => vec![P::equal(a1, b1), P::before(b2, a2)],
        R::Ends => vec![P::equal(a2, b2), P::before(b1, a1)],
        R::EndedBy => vec![P::equal(b2, a2), P::before(a1, b1)],
        R::Simultaneous => vec![P::equal(a1, b1), P::equal(a2, b2)],
        R::Identity => vec![P::equal(a1, b1), P::equal(b2, a2)],
        // DURING and DURING_INV carry the same equalities as SIMULTANEOUS.
        R::During => vec![P::equal(a1, b1), P::equal(a2, b2)],
        R::DuringInv => vec![P::equal(a1, b1), P::equal(a2, b2)],
    }
}

/// Endpoint assertions for a TLINK; other link kinds assert nothing.
pub fn tlink_to_assertions(link: &Link) -> Vec<PointAssertion> {
    match (link.kind, link.rel_type.temporal()) {
        (LinkKind::Tlink, Some(rel)) => relation_assertions(rel, &link.arg1, &link.arg2),
        _ => Vec::new(),
    }
}

/// Intervals appearing as TLINK arguments.
pub fn tlink_intervals(doc: &Document) -> BTreeSet<IntervalRef> {
    doc.tlinks().flat_map(|l| [l.arg1.clone(), l.arg2.clone()]).collect()
}

/// Where newly derived assertions join the agenda.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AgendaOrder {
    /// Append to the back, pop from the front.
    #[default]
    BreadthFirst,
    /// Push and pop at the same end.
    DepthFirst,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyResult {
    pub consistent: bool,
    /// The assertion that could not be added; present iff inconsistent.
    pub conflict: Option<PointAssertion>,
    /// Agenda items moved into the database.
    pub processed: usize,
}

impl ConsistencyResult {
    pub fn finding_text(&self) -> Option<alloc::string::String> {
        self.conflict
            .as_ref()
            .map(|c| alloc::format!("! Inconsistent closure - could not assert ({c})"))
    }
}

type PointId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Fact {
    Before(PointId, PointId),
    /// Lower id first.
    Equal(PointId, PointId),
}

fn equal(a: PointId, b: PointId) -> Fact {
    if a <= b {
        Fact::Equal(a, b)
    } else {
        Fact::Equal(b, a)
    }
}

/// Agenda plus conflict-free database of point assertions.
pub struct AssertionStore {
    points: Vec<TimePoint>,
    ids: BTreeMap<TimePoint, PointId>,
    order: AgendaOrder,
    agenda: VecDeque<Fact>,
    on_agenda: BTreeSet<Fact>,
    database: BTreeSet<Fact>,
    before_out: Vec<BTreeSet<PointId>>,
    before_in: Vec<BTreeSet<PointId>>,
    equals: Vec<BTreeSet<PointId>>,
    processed: usize,
}

impl AssertionStore {
    pub fn new(order: AgendaOrder) -> Self {
        AssertionStore {
            points: Vec::new(),
            ids: BTreeMap::new(),
            order,
            agenda: VecDeque::new(),
            on_agenda: BTreeSet::new(),
            database: BTreeSet::new(),
            before_out: Vec::new(),
            before_in: Vec::new(),
            equals: Vec::new(),
            processed: 0,
        }
    }

    fn intern(&mut self, p: &TimePoint) -> PointId {
        if let Some(&id) = self.ids.get(p) {
            return id;
        }
        let id = self.points.len() as PointId;
        self.points.push(p.clone());
        self.ids.insert(p.clone(), id);
        self.before_out.push(BTreeSet::new());
        self.before_in.push(BTreeSet::new());
        self.equals.push(BTreeSet::new());
        id
    }

    fn fact(&mut self, a: &PointAssertion) -> Fact {
        let l = self.intern(&a.left);
        let r = self.intern(&a.right);
        match a.rel {
            PointRelation::Before => Fact::Before(l, r),
            PointRelation::Equal => equal(l, r),
        }
    }

    fn assertion(&self, f: Fact) -> PointAssertion {
        match f {
            Fact::Before(l, r) => {
                PointAssertion::before(self.points[l as usize].clone(), self.points[r as usize].clone())
            }
            Fact::Equal(l, r) => {
                PointAssertion::equal(self.points[l as usize].clone(), self.points[r as usize].clone())
            }
        }
    }

    /// Adds an assertion straight to the database. Returns it back if it
    /// conflicts with what is already there.
    pub fn assume(&mut self, a: &PointAssertion) -> Result<(), PointAssertion> {
        let f = self.fact(a);
        if self.conflicts_with(&self.database, f) {
            return Err(a.clone());
        }
        self.insert(f);
        Ok(())
    }

    /// Queues an assertion on the agenda.
    pub fn enqueue(&mut self, a: &PointAssertion) {
        let f = self.fact(a);
        if self.on_agenda.insert(f) {
            self.agenda.push_back(f);
        }
    }

    fn holds_in(set: &BTreeSet<Fact>, f: Fact) -> bool {
        set.contains(&f)
    }

    fn conflicts_with(&self, set: &BTreeSet<Fact>, f: Fact) -> bool {
        match f {
            Fact::Before(x, y) => x == y || Self::holds_in(set, Fact::Before(y, x)) || Self::holds_in(set, equal(x, y)),
            Fact::Equal(x, y) => {
                x != y && (Self::holds_in(set, Fact::Before(x, y)) || Self::holds_in(set, Fact::Before(y, x)))
            }
        }
    }

    fn conflicts(&self, f: Fact) -> bool {
        self.conflicts_with(&self.database, f) || self.conflicts_with(&self.on_agenda, f)
    }

    fn insert(&mut self, f: Fact) {
        if !self.database.insert(f) {
            return;
        }
        match f {
            Fact::Before(x, y) => {
                self.before_out[x as usize].insert(y);
                self.before_in[y as usize].insert(x);
            }
            Fact::Equal(x, y) => {
                if x != y {
                    self.equals[x as usize].insert(y);
                    self.equals[y as usize].insert(x);
                }
            }
        }
    }

    /// Everything that follows from `f` together with one database fact.
    fn derive(&self, f: Fact) -> Vec<Fact> {
        let mut out = Vec::new();
        match f {
            Fact::Before(x, y) => {
                // x < y, y < z => x < z ; w < x, x < y => w < y
                out.extend(self.before_out[y as usize].iter().map(|&z| Fact::Before(x, z)));
                out.extend(self.before_in[x as usize].iter().map(|&w| Fact::Before(w, y)));
                // x < y, y = z => x < z ; w = x, x < y => w < y
                out.extend(self.equals[y as usize].iter().map(|&z| Fact::Before(x, z)));
                out.extend(self.equals[x as usize].iter().map(|&w| Fact::Before(w, y)));
            }
            Fact::Equal(x, y) => {
                for (a, b) in [(x, y), (y, x)] {
                    // a = b, b = z => a = z
                    out.extend(
                        self.equals[b as usize]
                            .iter()
                            .filter(|&&z| z != a)
                            .map(|&z| equal(a, z)),
                    );
                    // a = b, b < z => a < z ; w < b, b = a => w < a
                    out.extend(self.before_out[b as usize].iter().map(|&z| Fact::Before(a, z)));
                    out.extend(self.before_in[b as usize].iter().map(|&w| Fact::Before(w, a)));
                }
            }
        }
        out
    }

    fn pop(&mut self) -> Option<Fact> {
        let f = match self.order {
            AgendaOrder::BreadthFirst => self.agenda.pop_front(),
            AgendaOrder::DepthFirst => self.agenda.pop_back(),
        }?;
        self.on_agenda.remove(&f);
        Some(f)
    }

    /// Runs the agenda to exhaustion or to the first conflict.
    pub fn run(&mut self) -> ConsistencyResult {
        while let Some(f) = self.pop() {
            if self.database.contains(&f) || matches!(f, Fact::Equal(x, y) if x == y) {
                continue;
            }
            if self.conflicts(f) {
                return self.inconsistent(f);
            }
            let derived = self.derive(f);
            self.insert(f);
            self.processed += 1;
            for d in derived {
                if matches!(d, Fact::Equal(x, y) if x == y) || self.database.contains(&d) || self.on_agenda.contains(&d)
                {
                    continue;
                }
                if self.conflicts(d) {
                    return self.inconsistent(d);
                }
                self.on_agenda.insert(d);
                self.agenda.push_back(d);
            }
        }
        ConsistencyResult {
            consistent: true,
            conflict: None,
            processed: self.processed,
        }
    }

    fn inconsistent(&self, f: Fact) -> ConsistencyResult {
        ConsistencyResult {
            consistent: false,
            conflict: Some(self.assertion(f)),
            processed: self.processed,
        }
    }

    pub fn database(&self) -> impl Iterator<Item = PointAssertion> + '_ {
        self.database.iter().map(|&f| self.assertion(f))
    }
}

/// Checks axioms plus assertions for consistency.
pub fn check_assertions(
    axioms: &[PointAssertion],
    assertions: &[PointAssertion],
    order: AgendaOrder,
) -> ConsistencyResult {
    let mut store = AssertionStore::new(order);
    for axiom in axioms {
        if let Err(conflict) = store.assume(axiom) {
            return ConsistencyResult {
                consistent: false,
                conflict: Some(conflict),
                processed: 0,
            };
        }
    }
    for a in assertions {
        store.enqueue(a);
    }
    store.run()
}

pub fn check_consistency(doc: &Document) -> ConsistencyResult {
    check_consistency_with(doc, AgendaOrder::default())
}

pub fn check_consistency_with(doc: &Document, order: AgendaOrder) -> ConsistencyResult {
    let axioms = interval_axioms(&tlink_intervals(doc));
    let assertions: Vec<PointAssertion> = doc.tlinks().flat_map(tlink_to_assertions).collect();
    check_assertions(&axioms, &assertions, order)
}
