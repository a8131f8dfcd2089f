//! Combinatorial bounds `E_bi ≤ E ≤ E_LOCC` and the table classification.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::catalog::Category;
use crate::error::{Error, Result};
use crate::graph::{
    is_two_colorable, max_independent_set, max_matching, EdgeSet, Graph, VertexSet,
};

/// `n − |A|` for a maximum independent set `A`.
pub fn locc_upper_bound(g: &Graph) -> Result<usize> {
    Ok(g.n() - max_independent_set(g)?.len())
}

/// Size of a maximum matching, each matched edge counted as one Bell pair.
///
/// This counts candidate pairs without checking that they can be isolated
/// simultaneously, so it is only a lower bound for graphs where they can
/// (all graphs in the shipped families do). See [`cut_rank_lower_bound`].
pub fn bipartite_lower_bound(g: &Graph) -> usize {
    max_matching(g).len()
}

/// `max_A rank_GF(2) Γ[A, V∖A]`: the largest bipartite entanglement over
/// all cuts, which lower-bounds `E` for every graph.
pub fn cut_rank_lower_bound(g: &Graph) -> usize {
    let n = g.n();
    if n < 2 {
        return 0;
    }
    let full = VertexSet::full(n).mask();
    // vertex n−1 stays on the complement side; every cut appears once
    (1u32..1 << (n - 1))
        .map(|a| {
            let rows: Vec<u32> = VertexSet::from_mask(a)
                .iter()
                .map(|v| g.neighbors(v).mask() & full & !a)
                .collect();
            gf2_rank(rows)
        })
        .max()
        .unwrap_or(0)
}

fn gf2_rank(mut rows: Vec<u32>) -> usize {
    let mut rank = 0;
    while let Some(r) = (rank..rows.len()).find(|&r| rows[r] != 0) {
        rows.swap(rank, r);
        let pivot = rows[rank] & rows[rank].wrapping_neg();
        for k in 0..rows.len() {
            if k != rank && rows[k] & pivot != 0 {
                rows[k] ^= rows[rank];
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: usize,
    /// `E_LOCC`
    pub upper: usize,
    /// `E_bi` from the maximum matching.
    pub lower: usize,
    /// Certified lower bound from GF(2) cut ranks.
    pub cut_rank: usize,
    pub equal: bool,
    pub two_colorable: bool,
    /// `T3` only means the bounds differ.
    pub category: Category,
    pub independent_set: Vec<usize>,
    pub matching: EdgeSet,
}

impl BoundsReport {
    /// Entanglement implied by the bounds alone, when they coincide.
    pub fn determined(&self) -> Option<usize> {
        self.equal.then_some(self.upper)
    }
}

pub fn classify(g: &Graph) -> Result<BoundsReport> {
    let mis = max_independent_set(g)?;
    let matching = max_matching(g);
    let upper = g.n() - mis.len();
    let lower = matching.len();
    if lower > upper {
        return Err(Error::InvalidGraph(format!(
            "lower bound {lower} exceeds upper bound {upper}"
        )));
    }
    let equal = upper == lower;
    let two_colorable = is_two_colorable(g).is_some();
    let category = match (equal, two_colorable) {
        (true, true) => Category::Table1,
        (true, false) => Category::Table2,
        (false, _) => Category::Table3,
    };
    Ok(BoundsReport {
        n: g.n(),
        upper,
        lower,
        cut_rank: cut_rank_lower_bound(g),
        equal,
        two_colorable,
        category,
        independent_set: mis.iter().collect(),
        matching,
    })
}

/// `min_v (E(G − v) + 1)`, given `e_sub[v] = E(G − v)`.
pub fn subgraph_recursion_bound(g: &Graph, e_sub: &[f64]) -> Result<f64> {
    if g.n() == 1 {
        return Err(Error::InvalidArgument(
            "subgraph recursion needs at least two vertices".into(),
        ));
    }
    if e_sub.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: e_sub.len(),
        });
    }
    Ok(e_sub.iter().fold(f64::INFINITY, |m, &e| m.min(e + 1.0)))
}

/// One line of the fixed-width report: `No.  E_u  E_l  E_r  P_s`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub id: String,
    pub upper: usize,
    pub lower: usize,
    pub entanglement: Option<f64>,
    pub success: Option<f64>,
    pub note: Option<String>,
}

pub fn format_table(rows: &[TableRow]) -> String {
    let id_w = rows.iter().map(|r| r.id.len()).max().unwrap_or(0).max(3);
    let mut out = format!(
        "{:<id_w$}  {:>3}  {:>3}  {:>8}  {:>6}\n",
        "No.", "E_u", "E_l", "E_r", "P_s"
    );
    for r in rows {
        let e = r
            .entanglement
            .map_or("-".to_string(), |e| format!("{e:.4}"));
        let p = r.success.map_or("-".to_string(), |p| format!("{p:.3}"));
        let _ = write!(
            out,
            "{:<id_w$}  {:>3}  {:>3}  {:>8}  {:>6}",
            r.id, r.upper, r.lower, e, p
        );
        if let Some(n) = &r.note {
            let _ = write!(out, "  {n}");
        }
        out.push('\n');
    }
    out
}
