//! Local-complementation orbits of labeled graphs.

use std::collections::{HashSet, VecDeque};

use super::Graph;
use crate::error::{Error, Result};

pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;
const MAX_ORBIT_VERTICES: usize = 10;
const MAX_ISO_VERTICES: usize = 8;

/// All labeled graphs reachable from `g` by local complementations, in BFS order.
pub fn lc_orbit(g: &Graph) -> Result<Vec<Graph>> {
    lc_orbit_with_cap(g, DEFAULT_ORBIT_CAP)
}

pub fn lc_orbit_with_cap(g: &Graph, cap: usize) -> Result<Vec<Graph>> {
    if g.n() > MAX_ORBIT_VERTICES {
        return Err(Error::Capability(format!(
            "LC orbit enumeration limited to {MAX_ORBIT_VERTICES} vertices"
        )));
    }
    let mut seen: HashSet<Graph> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(g.clone());
    queue.push_back(g.clone());
    while let Some(h) = queue.pop_front() {
        for a in 0..h.n() {
            if h.degree(a) < 2 {
                continue;
            }
            let next = h.local_complement(a)?;
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(Error::OrbitCap {
                        cap,
                        found: seen.len(),
                    });
                }
                queue.push_back(next);
            }
        }
        order.push(h);
    }
    Ok(order)
}

/// Whether some relabeling of `g2` lies in the LC orbit of `g1`.
pub fn are_lc_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool> {
    if g1.n() != g2.n() {
        return Ok(false);
    }
    let n = g1.n();
    if n > MAX_ISO_VERTICES {
        return Err(Error::Capability(format!(
            "LC isomorphism test limited to {MAX_ISO_VERTICES} vertices"
        )));
    }
    // LC preserves neither edge count nor degrees, but it preserves connectivity
    // of each component's vertex set; cheap rejection on component sizes.
    if component_sizes(g1) != component_sizes(g2) {
        return Ok(false);
    }
    let orbit: HashSet<Graph> = lc_orbit(g1)?.into_iter().collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut found = orbit.contains(g2);
    heap_permutations(&mut perm, &mut |p| {
        if !found && orbit.contains(&g2.permuted(p)) {
            found = true;
        }
        found
    });
    Ok(found)
}

fn component_sizes(g: &Graph) -> Vec<usize> {
    let mut seen = 0u32;
    let mut sizes = Vec::new();
    for root in 0..g.n() {
        if seen >> root & 1 == 1 {
            continue;
        }
        let mut comp = 1u32 << root;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for v in super::VertexSet::from_mask(frontier).iter() {
                next |= g.neighbors(v).mask();
            }
            frontier = next & !comp;
            comp |= next;
        }
        seen |= comp;
        sizes.push(comp.count_ones() as usize);
    }
    sizes.sort_unstable();
    sizes
}

/// Heap's algorithm; `visit` returns true to stop early.
fn heap_permutations(p: &mut [usize], visit: &mut impl FnMut(&[usize]) -> bool) {
    let n = p.len();
    let mut c = vec![0usize; n];
    if visit(p) {
        return;
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            if visit(p) {
                return;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}
