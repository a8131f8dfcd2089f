//! Tensor-contraction evaluation of `f` and its partial derivatives.
//!
//! The graph state is held as a real `±2^{-n/2}` vector. Contracting one
//! qubit against `(x, y)` halves the vector, so a pair `(h_j, g_j)` costs
//! `O(2^n)` and a full sequential sweep, reusing the left environment,
//! costs about `4·2^n`.

use num_complex::Complex;

use crate::graph::Graph;
use crate::numeric::Real;
use crate::state::{graph_phase_signs, ProductState, QubitAmplitudePair};

pub(crate) struct OverlapEngine<T> {
    n: usize,
    psi: Vec<Complex<T>>,
    left: Vec<Complex<T>>,
    work: Vec<Complex<T>>,
}

/// Contracts the most significant remaining qubit.
fn contract_msb<T: Real>(v: &mut Vec<Complex<T>>, q: &QubitAmplitudePair<T>) {
    let half = v.len() / 2;
    let (x, y) = (q.x(), q.y());
    for i in 0..half {
        v[i] = x * v[i] + y * v[i + half];
    }
    v.truncate(half);
}

/// Contracts the least significant remaining qubit.
fn contract_lsb<T: Real>(v: &mut Vec<Complex<T>>, q: &QubitAmplitudePair<T>) {
    let half = v.len() / 2;
    let (x, y) = (q.x(), q.y());
    for i in 0..half {
        v[i] = x * v[2 * i] + y * v[2 * i + 1];
    }
    v.truncate(half);
}

impl<T: Real> OverlapEngine<T> {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let a = T::of(0.5f64.powf(n as f64 / 2.0));
        let psi = graph_phase_signs(g)
            .into_iter()
            .map(|odd| Complex::new(if odd { -a } else { a }, T::zero()))
            .collect();
        Self {
            n,
            psi,
            left: Vec::with_capacity(1 << n),
            work: Vec::with_capacity(1 << n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn overlap(&mut self, p: &ProductState<T>) -> Complex<T> {
        self.work.clear();
        self.work.extend_from_slice(&self.psi);
        for q in p.qubits() {
            contract_msb(&mut self.work, q);
        }
        self.work[0]
    }

    pub fn partials(&mut self, p: &ProductState<T>, j: usize) -> (Complex<T>, Complex<T>) {
        self.work.clear();
        self.work.extend_from_slice(&self.psi);
        for q in &p.qubits()[..j] {
            contract_msb(&mut self.work, q);
        }
        for q in p.qubits()[j + 1..].iter().rev() {
            contract_lsb(&mut self.work, q);
        }
        (self.work[0], self.work[1])
    }

    /// Starts a left-to-right sweep.
    pub fn begin_sweep(&mut self) {
        self.left.clear();
        self.left.extend_from_slice(&self.psi);
    }

    /// `(h_j, g_j)` for the next qubit of the sweep, with qubits `< j` taken
    /// from the left environment and qubits `> j` from `p`.
    pub fn sweep_partials(&mut self, p: &ProductState<T>, j: usize) -> (Complex<T>, Complex<T>) {
        debug_assert_eq!(self.left.len(), 1 << (self.n - j));
        self.work.clear();
        self.work.extend_from_slice(&self.left);
        for q in p.qubits()[j + 1..].iter().rev() {
            contract_lsb(&mut self.work, q);
        }
        (self.work[0], self.work[1])
    }

    /// Absorbs the (possibly updated) qubit `j` into the left environment.
    pub fn sweep_advance(&mut self, q: &QubitAmplitudePair<T>) {
        contract_msb(&mut self.left, q);
    }
}
