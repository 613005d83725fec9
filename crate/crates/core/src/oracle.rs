//! Independent consistency oracle for tests.
//!
//! Merges `=`-related points into classes with a union-find, then looks for a
//! `<` edge inside a class or a cycle among classes. Shares nothing with the
//! agenda propagation beyond the relation-to-assertion mapping.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::model::Document;
use crate::point_algebra::{
    interval_axioms, tlink_intervals, tlink_to_assertions, PointAssertion, PointRelation, TimePoint,
};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// True iff the assertions admit a total preorder on the points.
pub fn assertions_consistent(assertions: &[PointAssertion]) -> bool {
    let mut ids: BTreeMap<&TimePoint, usize> = BTreeMap::new();
    for a in assertions {
        for p in [&a.left, &a.right] {
            let n = ids.len();
            ids.entry(p).or_insert(n);
        }
    }
    let n = ids.len();
    let mut uf = UnionFind::new(n);
    for a in assertions.iter().filter(|a| a.rel == PointRelation::Equal) {
        uf.union(ids[&a.left], ids[&a.right]);
    }
    let mut edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in assertions.iter().filter(|a| a.rel == PointRelation::Before) {
        let (l, r) = (uf.find(ids[&a.left]), uf.find(ids[&a.right]));
        if l == r {
            return false;
        }
        edges[l].push(r);
    }
    !has_cycle(&edges)
}

fn has_cycle(edges: &[Vec<usize>]) -> bool {
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; edges.len()];
    for root in 0..edges.len() {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        state[root] = 1;
        while let Some(top) = stack.last_mut() {
            let node = top.0;
            if let Some(&succ) = edges[node].get(top.1) {
                top.1 += 1;
                match state[succ] {
                    1 => return true,
                    0 => {
                        state[succ] = 1;
                        stack.push((succ, 0));
                    }
                    _ => {}
                }
            } else {
                state[node] = 2;
                stack.pop();
            }
        }
    }
    false
}

pub fn oracle_consistency(doc: &Document) -> bool {
    let mut all = interval_axioms(&tlink_intervals(doc));
    all.extend(doc.tlinks().flat_map(tlink_to_assertions));
    assertions_consistent(&all)
}
