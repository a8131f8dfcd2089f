//! Simple undirected graphs on at most [`MAX_VERTICES`] vertices.
//!
//! Adjacency is stored as one bitmask row per vertex, bit `b` of row `a`
//! set iff `a` and `b` are joined. Rows are kept symmetric with a zero
//! diagonal.

mod combinatorics;
mod graph6;
mod lc;

pub use combinatorics::{
    is_two_colorable, max_independent_set, max_independent_set_size, max_matching,
    max_matching_size,
};
pub use graph6::{encode_graph6, parse_graph6};
pub use lc::{are_lc_isomorphic, lc_orbit, lc_orbit_with_cap, DEFAULT_ORBIT_CAP};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 16;

/// Membership bitmask over the vertices of a graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_mask(mask: u32) -> Self {
        VertexSet(mask)
    }

    /// All vertices `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        VertexSet(vs.into_iter().fold(0, |m, v| m | (1 << v)))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 32 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(v)
            }
        })
    }
}

/// Sorted list of unordered vertex pairs, each stored as `(a, b)` with `a < b`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<(usize, usize)>", into = "Vec<(usize, usize)>")]
pub struct EdgeSet(Vec<(usize, usize)>);

impl EdgeSet {
    /// Normalizes pair orientation and rejects loops and duplicates.
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Result<Self> {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (a, b) in pairs {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({}, {})",
                    w[0].0, w[0].1
                )));
            }
        }
        Ok(EdgeSet(edges))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[(usize, usize)] {
        &self.0
    }
}

impl TryFrom<Vec<(usize, usize)>> for EdgeSet {
    type Error = Error;
    fn try_from(v: Vec<(usize, usize)>) -> Result<Self> {
        EdgeSet::new(v)
    }
}

impl From<EdgeSet> for Vec<(usize, usize)> {
    fn from(e: EdgeSet) -> Self {
        e.0
    }
}

/// A simple undirected graph `G = (V, Γ)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    rows: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::from_edges(r.n, r.edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges().into(),
        }
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "vertex count {n} outside 1..={MAX_VERTICES}"
            )));
        }
        Ok(Graph {
            n,
            rows: vec![0; n],
        })
    }

    pub fn new(n: usize, edges: &EdgeSet) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for (a, b) in edges.iter() {
            if b >= n {
                return Err(Error::VertexOutOfRange { vertex: b, n });
            }
            g.rows[a] |= 1 << b;
            g.rows[b] |= 1 << a;
        }
        Ok(g)
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        Graph::new(n, &EdgeSet::new(edges)?)
    }

    /// Builds from a dense 0/1 matrix; it must be symmetric with zero diagonal.
    pub fn from_adjacency(matrix: &[Vec<u8>]) -> Result<Self> {
        let n = matrix.len();
        let mut g = Graph::empty(n)?;
        for (a, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGraph("adjacency matrix is not square".into()));
            }
            for (b, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 if a == b => {
                        return Err(Error::InvalidGraph(format!("nonzero diagonal at {a}")))
                    }
                    1 => g.rows[a] |= 1 << b,
                    _ => return Err(Error::InvalidGraph(format!("entry {v} is not binary"))),
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if g.has_edge(a, b) != g.has_edge(b, a) {
                    return Err(Error::InvalidGraph(format!(
                        "adjacency not symmetric at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rows[a] >> b & 1 == 1
    }

    /// Neighborhood `N_a`.
    pub fn neighbors(&self, a: usize) -> VertexSet {
        VertexSet(self.rows[a])
    }

    pub fn degree(&self, a: usize) -> usize {
        self.rows[a].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn edges(&self) -> EdgeSet {
        let mut v = Vec::with_capacity(self.edge_count());
        for a in 0..self.n {
            for b in VertexSet(self.rows[a] & !((2u32 << a) - 1)).iter() {
                v.push((a, b));
            }
        }
        EdgeSet(v)
    }

    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.has_edge(a, b) as u8).collect())
            .collect()
    }

    pub(crate) fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub(crate) fn toggle_edge(&mut self, a: usize, b: usize) {
        self.rows[a] ^= 1 << b;
        self.rows[b] ^= 1 << a;
    }

    pub fn check_vertex(&self, a: usize) -> Result<()> {
        if a >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: a,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Number of edges with both endpoints in `s`.
    pub fn edges_within(&self, s: VertexSet) -> u32 {
        s.iter()
            .map(|a| (self.rows[a] & s.0).count_ones())
            .sum::<u32>()
            / 2
    }

    /// Complements the subgraph induced on `N_a`.
    pub fn local_complement(&self, a: usize) -> Result<Graph> {
        self.check_vertex(a)?;
        let mut g = self.clone();
        let nb: Vec<usize> = self.neighbors(a).iter().collect();
        for (i, &b) in nb.iter().enumerate() {
            for &c in &nb[i + 1..] {
                g.toggle_edge(b, c);
            }
        }
        Ok(g)
    }

    /// Graph with vertex `v` and its incident edges removed; higher labels shift down.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let edges = self
            .edges()
            .iter()
            .filter(|&(a, b)| a != v && b != v)
            .map(|(a, b)| (a - (a > v) as usize, b - (b > v) as usize))
            .collect::<Vec<_>>();
        Graph::from_edges(self.n - 1, edges)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut rows = vec![0u32; self.n];
        for a in 0..self.n {
            for b in self.neighbors(a).iter() {
                rows[perm[a]] |= 1 << perm[b];
            }
        }
        Graph { n: self.n, rows }
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let mut next = 0;
            for v in VertexSet(frontier).iter() {
                next |= self.rows[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == VertexSet::full(self.n).0
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, edges={:?})",
            self.n,
            self.edges().as_slice()
        )
    }
}

/// Parses the plain edge-list format: one `a b` pair per line, 0-indexed.
///
/// Blank lines and text after `#` are ignored. A line `n <count>` fixes the
/// vertex count; otherwise it is one more than the largest endpoint.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::EdgeList {
                line: line_no,
                msg: format!("expected a vertex index, found {s:?}"),
            })
        };
        match toks.as_slice() {
            ["n", count] => n = Some(num(count)?),
            [a, b] => pairs.push((num(a)?, num(b)?)),
            _ => {
                return Err(Error::EdgeList {
                    line: line_no,
                    msg: format!("expected two vertex indices, found {line:?}"),
                })
            }
        }
    }
    let n = match n {
        Some(n) => n,
        None => pairs
            .iter()
            .map(|&(a, b)| a.max(b) + 1)
            .max()
            .ok_or(Error::EdgeList {
                line: 0,
                msg: "no edges and no vertex count".into(),
            })?,
    };
    Graph::from_edges(n, pairs)
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.n());
    for (a, b) in g.edges().iter() {
        s.push_str(&format!("{a} {b}\n"));
    }
    s
}
