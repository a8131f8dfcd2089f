//! Rounding a converged product state onto the known single-qubit alphabet.

use serde::{Deserialize, Serialize};

use crate::catalog::{alphabet_constants, ExactValue};
use crate::error::Result;
use crate::graph::{Graph, VertexSet};
use crate::numeric::Real;
use crate::state::{fidelity, ProductState, QubitAmplitudePair};

/// Largest Fubini–Study distance at which a qubit is snapped.
pub const SNAP_THRESHOLD: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct QubitSnap<T> {
    /// Nearest alphabet member (index into [`alphabet_constants`]) and its label.
    pub nearest: usize,
    pub label: String,
    pub distance: T,
    /// Distance exceeded [`SNAP_THRESHOLD`]; the qubit was left as is.
    pub refused: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct SnapResult<T> {
    pub snapped: ProductState<T>,
    pub qubits: Vec<QubitSnap<T>>,
    /// Fidelity at the snapped state, compensated summation.
    pub f_value: T,
    pub entanglement: T,
    /// Space-separated labels, `?` for refused qubits.
    pub pattern: String,
    /// Closed form matching `entanglement` within 1e-12, when every qubit snapped.
    pub exact: Option<ExactValue>,
    /// X-part of the stabilizer element applied before snapping (empty for a plain snap).
    #[serde(default)]
    pub stabilizer_flips: Vec<usize>,
}

impl<T: Real> SnapResult<T> {
    pub fn all_snapped(&self) -> bool {
        self.qubits.iter().all(|q| !q.refused)
    }

    /// Human-readable description of the snapped fidelity.
    pub fn describe(&self) -> String {
        match &self.exact {
            Some(e) => format!("F = 2^-({e}) = {}", self.f_value),
            None => format!("F = {}", self.f_value),
        }
    }
}

pub fn snap_to_exact<T: Real>(g: &Graph, p: &ProductState<T>) -> Result<SnapResult<T>> {
    let alphabet = alphabet_constants::<T>();
    let threshold = T::of(SNAP_THRESHOLD);
    let mut snapped = p.clone();
    let mut qubits = Vec::with_capacity(p.len());
    for (j, q) in p.qubits().iter().enumerate() {
        let mut nearest = 0;
        let mut distance = q.fubini_study(&alphabet[0].state);
        for (k, m) in alphabet.iter().enumerate().skip(1) {
            let d = q.fubini_study(&m.state);
            if d < distance {
                nearest = k;
                distance = d;
            }
        }
        let refused = distance > threshold;
        if !refused {
            snapped.set_qubit(j, alphabet[nearest].state);
        }
        qubits.push(QubitSnap {
            nearest,
            label: alphabet[nearest].label.to_string(),
            distance,
            refused,
        });
    }
    let f_value = fidelity(g, &snapped)?;
    let entanglement = if f_value > T::zero() {
        -f_value.log2()
    } else {
        T::infinity()
    };
    let pattern = qubits
        .iter()
        .map(|q| if q.refused { "?" } else { q.label.as_str() })
        .collect::<Vec<_>>()
        .join(" ");
    let exact = if qubits.iter().all(|q| !q.refused) && entanglement.is_finite() {
        ExactValue::identify(entanglement.to_f64_lossy(), 1e-12)
    } else {
        None
    };
    Ok(SnapResult {
        snapped,
        qubits,
        f_value,
        entanglement,
        pattern,
        exact,
        stabilizer_flips: Vec::new(),
    })
}

fn alphabet_distance<T: Real>(q: &QubitAmplitudePair<T>) -> T {
    alphabet_constants::<T>()
        .iter()
        .map(|m| q.fubini_study(&m.state))
        .fold(T::infinity(), T::min)
}

fn bit_flipped<T: Real>(q: &QubitAmplitudePair<T>) -> QubitAmplitudePair<T> {
    QubitAmplitudePair::gauged(q.y(), q.x())
}

fn phase_flipped<T: Real>(q: &QubitAmplitudePair<T>) -> QubitAmplitudePair<T> {
    QubitAmplitudePair::gauged(q.x(), -q.y())
}

/// Moves `p` along the stabilizer group of `|G⟩` towards the alphabet.
///
/// A stabilizer element with X-part `A` is `±∏_{a∈A} X_a Z_{N(a)}`, so it acts
/// on a product state qubit-wise and leaves the fidelity unchanged. The
/// alphabet is closed under `Z`, hence qubit `a` joins `A` exactly when a bit
/// flip brings it closer to the alphabet.
pub fn stabilizer_canonicalize<T: Real>(
    g: &Graph,
    p: &ProductState<T>,
) -> Result<(ProductState<T>, VertexSet)> {
    let n = g.n();
    if p.len() != n {
        return Err(crate::error::Error::DimensionMismatch {
            expected: n,
            got: p.len(),
        });
    }
    let mut flips = VertexSet::EMPTY;
    for (a, q) in p.qubits().iter().enumerate() {
        if alphabet_distance(&bit_flipped(q)) < alphabet_distance(q) {
            flips.insert(a);
        }
    }
    let mut out = p.clone();
    for j in 0..n {
        let mut q = *p.qubit(j);
        if flips.contains(j) {
            q = bit_flipped(&q);
        }
        let z_count = flips.iter().filter(|&a| g.has_edge(a, j)).count();
        if z_count % 2 == 1 {
            q = phase_flipped(&q);
        }
        out.set_qubit(j, q);
    }
    Ok((out, flips))
}

/// [`stabilizer_canonicalize`] followed by [`snap_to_exact`].
pub fn snap_canonical<T: Real>(g: &Graph, p: &ProductState<T>) -> Result<SnapResult<T>> {
    let (q, flips) = stabilizer_canonicalize(g, p)?;
    let mut s = snap_to_exact(g, &q)?;
    s.stabilizer_flips = flips.iter().collect();
    Ok(s)
}
