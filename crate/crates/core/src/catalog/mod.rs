//! Built-in graph families, the closest-state alphabet, exact constants and
//! the JSON-lines graph catalog.

mod alphabet;
mod exact;

pub use alphabet::{alphabet_constants, phi_sqrt_p, AlphabetMember};
pub use exact::{exact_value_eval, ExactValue, RadicalBase};

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{encode_graph6, parse_graph6, EdgeSet, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Empty,
    Complete,
    Star,
    Path,
    Cycle,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "empty" => Family::Empty,
            "complete" => Family::Complete,
            "star" => Family::Star,
            "path" => Family::Path,
            "cycle" | "ring" => Family::Cycle,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "unknown graph family {s:?}"
                )))
            }
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Empty => "empty",
            Family::Complete => "complete",
            Family::Star => "star",
            Family::Path => "path",
            Family::Cycle => "cycle",
        })
    }
}

/// Standard labeled member of a family: star centered at 0, paths and
/// cycles on consecutive labels.
pub fn builtin_family(family: Family, n: usize) -> Result<Graph> {
    let min = if family == Family::Cycle { 3 } else { 1 };
    if n < min {
        return Err(Error::InvalidArgument(format!(
            "{family} needs n ≥ {min}, got {n}"
        )));
    }
    let edges: Vec<(usize, usize)> = match family {
        Family::Empty => vec![],
        Family::Complete => (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect(),
        Family::Star => (1..n).map(|i| (0, i)).collect(),
        Family::Path => (1..n).map(|i| (i - 1, i)).collect(),
        Family::Cycle => (0..n).map(|i| (i, (i + 1) % n)).collect(),
    };
    Graph::from_edges(n, edges)
}

/// Parses `name:n`, e.g. `cycle:5`.
pub fn parse_family_spec(s: &str) -> Result<Graph> {
    let (name, n) = s
        .split_once(':')
        .ok_or_else(|| Error::InvalidArgument(format!("expected <family>:<n>, got {s:?}")))?;
    let n: usize = n
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad vertex count in {s:?}")))?;
    builtin_family(name.parse()?, n)
}

/// Table a graph belongs to: equal bounds and 2-colorable, equal bounds and
/// not 2-colorable, or unequal bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Category {
    #[serde(rename = "T1", alias = "Table1")]
    Table1,
    #[serde(rename = "T2", alias = "Table2")]
    Table2,
    #[serde(rename = "T3", alias = "Table3")]
    Table3,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Table1 => "T1",
            Category::Table2 => "T2",
            Category::Table3 => "T3",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CatalogId {
    Number(u32),
    Name(String),
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogId::Number(k) => write!(f, "{k}"),
            CatalogId::Name(s) => f.write_str(s),
        }
    }
}

impl FromStr for CatalogId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.parse::<u32>() {
            Ok(k) => CatalogId::Number(k),
            Err(_) => CatalogId::Name(s.to_string()),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub id: CatalogId,
    pub graph: Graph,
    pub expected: Option<ExactValue>,
    pub category: Option<Category>,
    pub ps_reference: Option<f64>,
    pub notes: Option<String>,
}

impl CatalogEntry {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn edges(&self) -> EdgeSet {
        self.graph.edges()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogLine {
    id: CatalogId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    graph6: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expected: Option<ExactValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    category: Option<Category>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    notes: Option<String>,
}

impl CatalogLine {
    fn into_entry(self) -> std::result::Result<CatalogEntry, String> {
        let graph = match (self.edges, self.graph6) {
            (Some(edges), None) => {
                let n = self.n.ok_or("`edges` requires `n`")?;
                Graph::from_edges(n, edges).map_err(|e| e.to_string())?
            }
            (None, Some(g6)) => {
                let g = parse_graph6(&g6).map_err(|e| e.to_string())?;
                if self.n.is_some_and(|n| n != g.n()) {
                    return Err(format!(
                        "n = {} disagrees with graph6 ({})",
                        self.n.unwrap(),
                        g.n()
                    ));
                }
                g
            }
            (Some(_), Some(_)) => return Err("give either `edges` or `graph6`, not both".into()),
            (None, None) => return Err("missing `edges` or `graph6`".into()),
        };
        if self.category == Some(Category::Table3) && self.expected.is_none() {
            return Err("category T3 requires an expected value".into());
        }
        if let Some(ps) = self.ps {
            if !(0.0..=1.0).contains(&ps) {
                return Err(format!("ps {ps} outside [0, 1]"));
            }
        }
        Ok(CatalogEntry {
            id: self.id,
            graph,
            expected: self.expected,
            category: self.category,
            ps_reference: self.ps,
            notes: self.notes,
        })
    }

    fn from_entry(e: &CatalogEntry) -> Self {
        CatalogLine {
            id: e.id.clone(),
            n: Some(e.graph.n()),
            edges: Some(e.graph.edges().into()),
            graph6: None,
            expected: e.expected.clone(),
            category: e.category,
            ps: e.ps_reference,
            notes: e.notes.clone(),
        }
    }
}

/// Parses JSON-lines catalog text. Blank lines are skipped.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();
    let mut ids = HashSet::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let err = |msg: String| Error::Catalog { line: line_no, msg };
        let raw: CatalogLine = serde_json::from_str(line).map_err(|e| err(e.to_string()))?;
        let entry = raw.into_entry().map_err(err)?;
        if !ids.insert(entry.id.clone()) {
            return Err(err(format!("duplicate id {}", entry.id)));
        }
        entries.push(entry);
    }
    Ok(entries)
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<CatalogEntry>> {
    parse_catalog(&std::fs::read_to_string(path)?)
}

pub fn format_catalog(entries: &[CatalogEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(
            &serde_json::to_string(&CatalogLine::from_entry(e)).expect("catalog line serializes"),
        );
        out.push('\n');
    }
    out
}

pub fn save_catalog(path: impl AsRef<Path>, entries: &[CatalogEntry]) -> Result<()> {
    std::fs::write(path, format_catalog(entries))?;
    Ok(())
}

const SEED_CATALOG: &str = include_str!("../../data/seed_catalog.jsonl");

/// The catalog shipped with the crate.
pub fn seed_catalog() -> Vec<CatalogEntry> {
    parse_catalog(SEED_CATALOG).expect("shipped catalog is valid")
}

/// graph6 string of an entry, for display.
pub fn entry_graph6(e: &CatalogEntry) -> String {
    encode_graph6(&e.graph)
}
