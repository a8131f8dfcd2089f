//! Exhaustive searches: 2-coloring, maximum independent set, maximum matching.

use std::collections::VecDeque;

use super::{EdgeSet, Graph, VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

/// Proper 2-coloring `(color 0, color 1)` if the graph has no odd cycle.
///
/// BFS from the lowest uncolored vertex of each component; that root gets color 0.
pub fn is_two_colorable(g: &Graph) -> Option<(VertexSet, VertexSet)> {
    let n = g.n();
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(false);
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            let c = color[v].unwrap();
            for w in g.neighbors(v).iter() {
                match color[w] {
                    None => {
                        color[w] = Some(!c);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == c => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let mut parts = (VertexSet::EMPTY, VertexSet::EMPTY);
    for (v, c) in color.into_iter().enumerate() {
        if c == Some(true) {
            parts.1.insert(v);
        } else {
            parts.0.insert(v);
        }
    }
    Some(parts)
}

/// A maximum independent set, lowest mask among those of maximum size.
pub fn max_independent_set(g: &Graph) -> Result<VertexSet> {
    let n = g.n();
    if n > MAX_VERTICES {
        return Err(Error::Capability(format!(
            "independent-set enumeration limited to {MAX_VERTICES} vertices"
        )));
    }
    let rows = g.rows();
    let mut independent = vec![false; 1 << n];
    independent[0] = true;
    let mut best = 0u32;
    for mask in 1u32..(1 << n) {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let ok = independent[rest as usize] && rows[v] & rest == 0;
        independent[mask as usize] = ok;
        if ok && mask.count_ones() > best.count_ones() {
            best = mask;
        }
    }
    Ok(VertexSet::from_mask(best))
}

/// `|A|` for a maximum independent set `A`.
pub fn max_independent_set_size(g: &Graph) -> Result<usize> {
    max_independent_set(g).map(VertexSet::len)
}

/// A maximum matching found by branch-and-bound over the lowest free vertex.
pub fn max_matching(g: &Graph) -> EdgeSet {
    let mut search = MatchingSearch {
        rows: g.rows(),
        current: Vec::new(),
        best: Vec::new(),
    };
    search.go(VertexSet::full(g.n()).mask());
    EdgeSet::new(search.best).expect("matching edges are distinct")
}

pub fn max_matching_size(g: &Graph) -> usize {
    max_matching(g).len()
}

struct MatchingSearch<'a> {
    rows: &'a [u32],
    current: Vec<(usize, usize)>,
    best: Vec<(usize, usize)>,
}

impl MatchingSearch<'_> {
    /// `free`: vertices not yet matched or discarded.
    fn go(&mut self, free: u32) {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        // vertices with a free neighbor bound what can still be matched
        let mut live = 0u32;
        for v in VertexSet::from_mask(free).iter() {
            if self.rows[v] & free != 0 {
                live |= 1 << v;
            }
        }
        if self.current.len() + live.count_ones() as usize / 2 <= self.best.len() {
            return;
        }
        let v = live.trailing_zeros() as usize;
        let without_v = free & !(1 << v);
        for w in VertexSet::from_mask(self.rows[v] & without_v).iter() {
            self.current.push((v, w));
            self.go(without_v & !(1 << w));
            self.current.pop();
        }
        self.go(without_v);
    }
}
