//! graph6 encoding for graphs on up to 62 vertices (single-byte size field).

use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

const BIAS: u8 = 63;
const HEADER: &str = ">>graph6<<";

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    let (&size, body) = bytes
        .split_first()
        .ok_or_else(|| Error::Graph6("empty input".into()))?;
    if let Some(&c) = bytes.iter().find(|&&c| !(BIAS..=126).contains(&c)) {
        return Err(Error::Graph6(format!("byte {c} outside 63..=126")));
    }
    if size == 126 {
        return Err(Error::Graph6(format!(
            "multi-byte size field unsupported (n ≤ {MAX_VERTICES})"
        )));
    }
    let n = (size - BIAS) as usize;
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::Graph6(format!(
            "vertex count {n} outside 1..={MAX_VERTICES}"
        )));
    }
    let nbits = n * (n - 1) / 2;
    let nchunks = nbits.div_ceil(6);
    if body.len() != nchunks {
        return Err(Error::Graph6(format!(
            "expected {nchunks} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - BIAS) >> (5 - k % 6) & 1 == 1;
    for k in nbits..nchunks * 6 {
        if bit(k) {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.toggle_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = vec![BIAS + n as u8];
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = chunk << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(BIAS + chunk);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(BIAS + (chunk << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}
