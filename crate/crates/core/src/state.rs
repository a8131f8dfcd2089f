//! Dense amplitude vectors for graph states and product states.
//!
//! Basis index convention: for an `n`-qubit state, qubit 0 is the most
//! significant bit of the index `μ`, so qubit `j` sits at bit `n - 1 - j`.

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::{norm_sqr, CompensatedComplexSum, CompensatedSum, Real};

/// Bit of the basis index that holds qubit `j`.
#[inline]
pub fn qubit_bit(n: usize, j: usize) -> usize {
    1 << (n - 1 - j)
}

/// Single-qubit state `x|0⟩ + y|1⟩`, normalized and gauge fixed:
/// `x` is real and non-negative, and `y = 1` when `x = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
#[serde(try_from = "[Complex<T>; 2]", into = "[Complex<T>; 2]")]
pub struct QubitAmplitudePair<T> {
    x: Complex<T>,
    y: Complex<T>,
}

impl<T: Real> QubitAmplitudePair<T> {
    /// Normalizes `(x, y)` and removes the global phase. Fails on a zero vector.
    pub fn new(x: Complex<T>, y: Complex<T>) -> Result<Self> {
        let norm = (norm_sqr(x) + norm_sqr(y)).sqrt();
        if norm.is_nan() || norm <= T::zero() || !norm.is_finite() {
            return Err(Error::InvalidArgument(
                "qubit amplitudes must be finite and not both zero".into(),
            ));
        }
        let ax = x.norm();
        if ax == T::zero() {
            return Ok(Self {
                x: Complex::new(T::zero(), T::zero()),
                y: Complex::new(T::one(), T::zero()),
            });
        }
        // multiply by conj(x)/|x| so that x becomes |x|
        let phase = x.conj() / ax;
        Ok(Self {
            x: Complex::new(ax / norm, T::zero()),
            y: y * phase / norm,
        })
    }

    /// Takes `(x, y)` as given, without renormalizing; the caller guarantees
    /// unit norm and the gauge (`x` real, non-negative).
    pub(crate) fn from_normalized(x: Complex<T>, y: Complex<T>) -> Self {
        debug_assert!(x.im == T::zero() && x.re >= T::zero());
        debug_assert!((norm_sqr(x) + norm_sqr(y) - T::one()).abs() < T::of(1e-6));
        Self { x, y }
    }

    /// Removes the global phase of a unit-norm pair without renormalizing.
    pub(crate) fn gauged(x: Complex<T>, y: Complex<T>) -> Self {
        let ax = x.norm();
        if ax == T::zero() {
            return Self {
                x: Complex::new(T::zero(), T::zero()),
                y: Complex::new(y.norm(), T::zero()),
            };
        }
        Self {
            x: Complex::new(ax, T::zero()),
            y: y * (x.conj() / ax),
        }
    }

    pub fn from_real(x: T, y: T) -> Result<Self> {
        Self::new(Complex::new(x, T::zero()), Complex::new(y, T::zero()))
    }

    /// `cos θ |0⟩ + sin θ e^{iφ} |1⟩`.
    pub fn from_angles(theta: T, phi: T) -> Self {
        Self::new(
            Complex::new(theta.cos(), T::zero()),
            Complex::from_polar(theta.sin(), phi),
        )
        .expect("angle parametrization is normalized")
    }

    pub fn zero() -> Self {
        Self {
            x: Complex::new(T::one(), T::zero()),
            y: Complex::new(T::zero(), T::zero()),
        }
    }

    pub fn one() -> Self {
        Self {
            x: Complex::new(T::zero(), T::zero()),
            y: Complex::new(T::one(), T::zero()),
        }
    }

    pub fn plus() -> Self {
        let h = T::FRAC_1_SQRT_2();
        Self {
            x: Complex::new(h, T::zero()),
            y: Complex::new(h, T::zero()),
        }
    }

    pub fn minus() -> Self {
        let h = T::FRAC_1_SQRT_2();
        Self {
            x: Complex::new(h, T::zero()),
            y: Complex::new(-h, T::zero()),
        }
    }

    /// Uniform (Haar) sample on the Bloch sphere.
    pub fn random_haar<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let u: f64 = rng.gen_range(-1.0..=1.0);
        let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let x = ((1.0 + u) / 2.0).sqrt();
        let r = ((1.0 - u) / 2.0).sqrt();
        Self::new(
            Complex::new(T::of(x), T::zero()),
            Complex::from_polar(T::of(r), T::of(phi)),
        )
        .expect("Bloch sample is normalized")
    }

    pub fn x(&self) -> Complex<T> {
        self.x
    }

    pub fn y(&self) -> Complex<T> {
        self.y
    }

    /// Amplitude on `|bit⟩`.
    #[inline]
    pub fn amplitude(&self, bit: bool) -> Complex<T> {
        if bit {
            self.y
        } else {
            self.x
        }
    }

    /// `y / x`, or `None` at the pole `x = 0`.
    pub fn ratio(&self) -> Option<Complex<T>> {
        if self.x.re == T::zero() {
            None
        } else {
            Some(self.y / self.x)
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.x.conj() * other.x + self.y.conj() * other.y
    }

    /// Fubini–Study distance `arccos |⟨a|b⟩|`, insensitive to global phase.
    pub fn fubini_study(&self, other: &Self) -> T {
        self.inner(other).norm().min(T::one()).acos()
    }

    pub fn norm_sqr(&self) -> T {
        norm_sqr(self.x) + norm_sqr(self.y)
    }

    /// Lossless-as-possible conversion between scalar types.
    pub fn cast<U: Real>(&self) -> QubitAmplitudePair<U> {
        let c =
            |z: Complex<T>| Complex::new(U::of(z.re.to_f64_lossy()), U::of(z.im.to_f64_lossy()));
        QubitAmplitudePair {
            x: c(self.x),
            y: c(self.y),
        }
    }
}

impl<T: Real> TryFrom<[Complex<T>; 2]> for QubitAmplitudePair<T> {
    type Error = Error;
    fn try_from(v: [Complex<T>; 2]) -> Result<Self> {
        Self::new(v[0], v[1])
    }
}

impl<T: Real> From<QubitAmplitudePair<T>> for [Complex<T>; 2] {
    fn from(p: QubitAmplitudePair<T>) -> Self {
        [p.x, p.y]
    }
}

/// `⊗_j (x_j|0⟩ + y_j|1⟩)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real", transparent)]
pub struct ProductState<T> {
    qubits: Vec<QubitAmplitudePair<T>>,
}

impl<T: Real> ProductState<T> {
    pub fn new(qubits: Vec<QubitAmplitudePair<T>>) -> Self {
        Self { qubits }
    }

    pub fn uniform(n: usize, q: QubitAmplitudePair<T>) -> Self {
        Self { qubits: vec![q; n] }
    }

    pub fn random_haar<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self {
            qubits: (0..n)
                .map(|_| QubitAmplitudePair::random_haar(rng))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.qubits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qubits.is_empty()
    }

    pub fn qubit(&self, j: usize) -> &QubitAmplitudePair<T> {
        &self.qubits[j]
    }

    pub fn set_qubit(&mut self, j: usize, q: QubitAmplitudePair<T>) {
        self.qubits[j] = q;
    }

    pub fn qubits(&self) -> &[QubitAmplitudePair<T>] {
        &self.qubits
    }

    /// Product of the qubit amplitudes selected by basis index `mu`.
    fn amplitude(&self, mu: usize) -> Complex<T> {
        let n = self.qubits.len();
        self.qubits
            .iter()
            .enumerate()
            .fold(Complex::new(T::one(), T::zero()), |acc, (j, q)| {
                acc * q.amplitude(mu & qubit_bit(n, j) != 0)
            })
    }

    pub fn cast<U: Real>(&self) -> ProductState<U> {
        ProductState {
            qubits: self.qubits.iter().map(|q| q.cast()).collect(),
        }
    }
}

/// Pure `n`-qubit state as `2^n` amplitudes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct StateVector<T> {
    n: usize,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    pub fn from_amplitudes(n: usize, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if amplitudes.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                got: amplitudes.len(),
            });
        }
        Ok(Self { n, amplitudes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        let mut s = CompensatedSum::new();
        for a in &self.amplitudes {
            s.add(norm_sqr(*a));
        }
        s.value()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut s = CompensatedComplexSum::new();
        for (a, b) in self.amplitudes.iter().zip(&other.amplitudes) {
            s.add(a.conj() * b);
        }
        Ok(s.value())
    }

    /// Largest componentwise distance `max_μ |a_μ − b_μ|`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    pub fn scaled(&self, c: Complex<T>) -> Self {
        Self {
            n: self.n,
            amplitudes: self.amplitudes.iter().map(|a| a * c).collect(),
        }
    }
}

/// Whether `(-1)^{½ μΓμᵀ}` is negative, per basis index.
///
/// `½ μΓμᵀ` is the number of edges inside the support of `μ`; its parity is
/// built up one vertex at a time from the lowest set bit.
pub fn graph_phase_signs(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let adj: Vec<usize> = (0..n)
        .map(|j| g.neighbors(j).iter().map(|b| qubit_bit(n, b)).sum())
        .collect();
    let mut odd = vec![false; 1 << n];
    for mu in 1usize..1 << n {
        let low = mu.trailing_zeros() as usize;
        let j = n - 1 - low;
        let rest = mu & (mu - 1);
        odd[mu] = odd[rest] ^ ((adj[j] & rest).count_ones() & 1 == 1);
    }
    odd
}

/// Amplitudes `2^{-n/2} (-1)^{½ μΓμᵀ}` of the graph state `|G⟩`.
pub fn graph_state_vector<T: Real>(g: &Graph) -> StateVector<T> {
    let n = g.n();
    let a = T::of(0.5f64.powf(n as f64 / 2.0));
    let amplitudes = graph_phase_signs(g)
        .into_iter()
        .map(|odd| Complex::new(if odd { -a } else { a }, T::zero()))
        .collect();
    StateVector { n, amplitudes }
}

/// `∏_a Z_a^{k_a} |G⟩`.
pub fn graph_basis_state<T: Real>(g: &Graph, k: &[bool]) -> Result<StateVector<T>> {
    let n = g.n();
    if k.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: k.len(),
        });
    }
    let kmask: usize = (0..n).filter(|&a| k[a]).map(|a| qubit_bit(n, a)).sum();
    let mut s = graph_state_vector::<T>(g);
    for (mu, amp) in s.amplitudes.iter_mut().enumerate() {
        if (mu & kmask).count_ones() & 1 == 1 {
            *amp = -*amp;
        }
    }
    Ok(s)
}

/// Applies `K_a = X_a Z_{N_a}` to `s`.
pub fn apply_stabilizer<T: Real>(
    g: &Graph,
    a: usize,
    s: &StateVector<T>,
) -> Result<StateVector<T>> {
    g.check_vertex(a)?;
    check_dim(g, s)?;
    let n = g.n();
    let flip = qubit_bit(n, a);
    let zmask: usize = g.neighbors(a).iter().map(|b| qubit_bit(n, b)).sum();
    let amplitudes = (0..1usize << n)
        .map(|mu| {
            let v = s.amplitudes[mu ^ flip];
            if (mu & zmask).count_ones() & 1 == 1 {
                -v
            } else {
                v
            }
        })
        .collect();
    Ok(StateVector { n, amplitudes })
}

/// `Some(±1)` if `K_a s = ±s` within 1e-10 (componentwise), `None` otherwise.
pub fn stabilizer_eigencheck<T: Real>(
    g: &Graph,
    a: usize,
    s: &StateVector<T>,
) -> Result<Option<i32>> {
    let ks = apply_stabilizer(g, a, s)?;
    let tol = T::of(1e-10);
    if ks.max_abs_diff(s) <= tol {
        Ok(Some(1))
    } else if ks.max_abs_diff(&s.scaled(Complex::new(-T::one(), T::zero()))) <= tol {
        Ok(Some(-1))
    } else {
        Ok(None)
    }
}

/// Dense vector of `⊗_j (x_j|0⟩ + y_j|1⟩)`.
pub fn product_state_vector<T: Real>(p: &ProductState<T>) -> StateVector<T> {
    let n = p.len();
    // grow qubit by qubit; qubit 0 ends up as the most significant bit
    let mut amps = vec![Complex::new(T::one(), T::zero())];
    for q in p.qubits() {
        let mut next = Vec::with_capacity(amps.len() * 2);
        next.extend(amps.iter().map(|a| a * q.x));
        next.extend(amps.iter().map(|a| a * q.y));
        amps = next;
    }
    // the loop above put qubit n-1 at the top bit; reverse the bit order
    let amplitudes = (0..1usize << n)
        .map(|mu| amps[reverse_bits(mu, n)])
        .collect();
    StateVector { n, amplitudes }
}

fn reverse_bits(mu: usize, n: usize) -> usize {
    if n == 0 {
        0
    } else {
        mu.reverse_bits() >> (usize::BITS as usize - n)
    }
}

fn check_dim<T: Real>(g: &Graph, s: &StateVector<T>) -> Result<()> {
    if s.n != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: s.n,
        });
    }
    Ok(())
}

fn check_product<T: Real>(g: &Graph, p: &ProductState<T>) -> Result<()> {
    if p.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: p.len(),
        });
    }
    Ok(())
}

/// `f = ⟨G|φ⟩ = 2^{-n/2} Σ_μ (-1)^{½μΓμᵀ} ∏_j x_j^{1-μ_j} y_j^{μ_j}`,
/// accumulated term by term with compensated summation.
pub fn overlap<T: Real>(g: &Graph, p: &ProductState<T>) -> Result<Complex<T>> {
    check_product(g, p)?;
    let n = g.n();
    let signs = graph_phase_signs(g);
    let mut s = CompensatedComplexSum::new();
    for (mu, &odd) in signs.iter().enumerate() {
        let term = p.amplitude(mu);
        s.add(if odd { -term } else { term });
    }
    Ok(s.value() * T::of(0.5f64.powf(n as f64 / 2.0)))
}

/// `F = |⟨G|φ⟩|²`.
pub fn fidelity<T: Real>(g: &Graph, p: &ProductState<T>) -> Result<T> {
    overlap(g, p).map(norm_sqr)
}

/// `(h_j, g_j) = (∂f/∂x_j, ∂f/∂y_j)`, so that `f = x_j h_j + y_j g_j`.
pub fn partial_overlaps<T: Real>(
    g: &Graph,
    p: &ProductState<T>,
    j: usize,
) -> Result<(Complex<T>, Complex<T>)> {
    check_product(g, p)?;
    g.check_vertex(j)?;
    let n = g.n();
    let bit = qubit_bit(n, j);
    let signs = graph_phase_signs(g);
    let mut h = CompensatedComplexSum::new();
    let mut gg = CompensatedComplexSum::new();
    for (mu, &odd) in signs.iter().enumerate() {
        let mut term = Complex::new(if odd { -T::one() } else { T::one() }, T::zero());
        for (k, q) in p.qubits().iter().enumerate() {
            if k != j {
                term = term * q.amplitude(mu & qubit_bit(n, k) != 0);
            }
        }
        if mu & bit == 0 {
            h.add(term);
        } else {
            gg.add(term);
        }
    }
    let scale = T::of(0.5f64.powf(n as f64 / 2.0));
    Ok((h.value() * scale, gg.value() * scale))
}

/// Applies `exp(−iπ/4 X_a) ∏_{b∈N_a} exp(iπ/4 Z_b)`, which maps `|G⟩` to
/// the graph state of the local complement at `a` up to a global phase.
pub fn apply_lc_unitary<T: Real>(
    g: &Graph,
    a: usize,
    s: &StateVector<T>,
) -> Result<StateVector<T>> {
    g.check_vertex(a)?;
    check_dim(g, s)?;
    let n = g.n();
    let quarter = T::FRAC_PI_4();
    let up = Complex::from_polar(T::one(), quarter);
    let down = up.conj();
    let mut amps = s.amplitudes.clone();
    for b in g.neighbors(a).iter() {
        let bit = qubit_bit(n, b);
        for (mu, amp) in amps.iter_mut().enumerate() {
            *amp = *amp * if mu & bit == 0 { up } else { down };
        }
    }
    // exp(−iπ/4 X) = (I − iX)/√2
    let bit = qubit_bit(n, a);
    let c = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    let mi = Complex::new(T::zero(), -T::FRAC_1_SQRT_2());
    for mu in 0..1usize << n {
        if mu & bit == 0 {
            let (u, v) = (amps[mu], amps[mu | bit]);
            amps[mu] = c * u + mi * v;
            amps[mu | bit] = mi * u + c * v;
        }
    }
    Ok(StateVector {
        n,
        amplitudes: amps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type C = Complex<f64>;

    fn k2() -> Graph {
        Graph::from_edges(2, [(0, 1)]).unwrap()
    }

    fn c5() -> Graph {
        Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap()
    }

    #[test]
    fn gauge_fixing() {
        let q = QubitAmplitudePair::<f64>::new(C::new(0.0, 2.0), C::new(0.0, 2.0)).unwrap();
        assert!((q.x().re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(q.x().im, 0.0);
        assert!((q.y() - C::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        let one = QubitAmplitudePair::<f64>::new(C::new(0.0, 0.0), C::new(0.0, -3.0)).unwrap();
        assert_eq!(one, QubitAmplitudePair::one());
        assert!(one.ratio().is_none());
        assert!(QubitAmplitudePair::<f64>::new(C::new(0.0, 0.0), C::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn haar_samples_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let q = QubitAmplitudePair::<f64>::random_haar(&mut rng);
            assert!((q.norm_sqr() - 1.0).abs() < 1e-14);
            assert!(q.x().re >= 0.0 && q.x().im == 0.0);
        }
    }

    #[test]
    fn graph_state_examples() {
        let s = graph_state_vector::<f64>(&Graph::empty(1).unwrap());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.amplitudes()[0].re - h).abs() < 1e-16);
        assert!((s.amplitudes()[1].re - h).abs() < 1e-16);
        let s = graph_state_vector::<f64>(&k2());
        let re: Vec<f64> = s.amplitudes().iter().map(|a| a.re).collect();
        assert_eq!(re, vec![0.5, 0.5, 0.5, -0.5]);
    }

    #[test]
    fn basis_states() {
        let g = k2();
        let s0 = graph_basis_state::<f64>(&g, &[false, false]).unwrap();
        assert_eq!(s0, graph_state_vector(&g));
        let s = graph_basis_state::<f64>(&g, &[true, false]).unwrap();
        assert_eq!(stabilizer_eigencheck(&g, 0, &s).unwrap(), Some(-1));
        assert_eq!(stabilizer_eigencheck(&g, 1, &s).unwrap(), Some(1));
        assert!(graph_basis_state::<f64>(&g, &[true]).is_err());
    }

    #[test]
    fn eigencheck_failure_on_uniform_superposition() {
        let plus =
            product_state_vector(&ProductState::<f64>::uniform(2, QubitAmplitudePair::plus()));
        assert_eq!(stabilizer_eigencheck(&k2(), 0, &plus).unwrap(), None);
        let g = c5();
        let s = graph_state_vector::<f64>(&g);
        for a in 0..5 {
            assert_eq!(stabilizer_eigencheck(&g, a, &s).unwrap(), Some(1));
        }
        assert!(stabilizer_eigencheck(&g, 5, &s).is_err());
    }

    #[test]
    fn product_vectors() {
        let p = ProductState::<f64>::uniform(3, QubitAmplitudePair::plus());
        for a in product_state_vector(&p).amplitudes() {
            assert!((a.re - 0.5f64.powf(1.5)).abs() < 1e-16);
        }
        let z = product_state_vector(&ProductState::<f64>::uniform(3, QubitAmplitudePair::zero()));
        assert_eq!(z.amplitudes()[0], C::new(1.0, 0.0));
        // qubit 0 is the most significant bit
        let p = ProductState::new(vec![QubitAmplitudePair::one(), QubitAmplitudePair::zero()]);
        let v = product_state_vector::<f64>(&p);
        assert_eq!(v.amplitudes()[0b10], C::new(1.0, 0.0));
    }

    #[test]
    fn bell_pair_overlap() {
        let p = ProductState::new(vec![
            QubitAmplitudePair::<f64>::zero(),
            QubitAmplitudePair::plus(),
        ]);
        let f = overlap(&k2(), &p).unwrap();
        assert!((f - C::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)).norm() < 1e-16);
        assert!((fidelity(&k2(), &p).unwrap() - 0.5).abs() < 1e-15);
        let (h, g) = partial_overlaps(&k2(), &p, 1).unwrap();
        assert!((h - C::new(0.5, 0.0)).norm() < 1e-16);
        assert!((g - C::new(0.5, 0.0)).norm() < 1e-16);
        assert!(overlap(&c5(), &p).is_err());
    }

    #[test]
    fn all_plus_overlap_is_signed_count() {
        let g = c5();
        let p = ProductState::<f64>::uniform(5, QubitAmplitudePair::plus());
        let signs = graph_phase_signs(&g);
        let count: i32 = signs.iter().map(|&o| if o { -1 } else { 1 }).sum();
        let f = overlap(&g, &p).unwrap();
        assert!((f.re - count as f64 / 32.0).abs() < 1e-16);
    }

    #[test]
    fn ring5_closest_state_fidelity() {
        let p = (0.5 * (1.0 - 1.0 / 3f64.sqrt())).sqrt();
        let q = QubitAmplitudePair::new(
            C::new(p, 0.0),
            C::from_polar((1.0 - p * p).sqrt(), std::f64::consts::FRAC_PI_4),
        )
        .unwrap();
        let f = fidelity(&c5(), &ProductState::uniform(5, q)).unwrap();
        let exact = (3.0 + 3f64.sqrt()) / 36.0;
        assert!((f - exact).abs() < 1e-15, "{f} vs {exact}");
        assert!((exact - 1.0 / (6.0 * (3.0 - 3f64.sqrt()))).abs() < 1e-15);
    }

    #[test]
    fn empty_graph_partials_ignore_own_qubit() {
        let g = Graph::empty(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut p = ProductState::<f64>::random_haar(3, &mut rng);
        let before = partial_overlaps(&g, &p, 1).unwrap();
        p.set_qubit(1, QubitAmplitudePair::random_haar(&mut rng));
        let after = partial_overlaps(&g, &p, 1).unwrap();
        assert!((before.0 - after.0).norm() < 1e-15);
        assert!((before.1 - after.1).norm() < 1e-15);
        // Γ = 0: h = g
        assert!((after.0 - after.1).norm() < 1e-15);
    }

    #[test]
    fn partial_derivative_by_finite_difference() {
        let g = c5();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = ProductState::<f64>::random_haar(5, &mut rng);
        let eps = 1e-7;
        for j in 0..5 {
            let (h, gj) = partial_overlaps(&g, &p, j).unwrap();
            // f is linear in (x_j, y_j): perturb the raw amplitudes without renormalizing
            let f0 = raw_overlap(&g, &p, j, C::new(0.0, 0.0), C::new(0.0, 0.0));
            let fx = raw_overlap(&g, &p, j, C::new(eps, 0.0), C::new(0.0, 0.0));
            let fy = raw_overlap(&g, &p, j, C::new(0.0, 0.0), C::new(eps, 0.0));
            assert!((h - (fx - f0) / eps).norm() < 1e-6);
            assert!((gj - (fy - f0) / eps).norm() < 1e-6);
        }
    }

    /// Overlap with qubit `j` replaced by the unnormalized `(x_j + dx, y_j + dy)`.
    fn raw_overlap(g: &Graph, p: &ProductState<f64>, j: usize, dx: C, dy: C) -> C {
        let n = g.n();
        let signs = graph_phase_signs(g);
        let mut f = C::new(0.0, 0.0);
        for (mu, &odd) in signs.iter().enumerate() {
            let mut t = C::new(if odd { -1.0 } else { 1.0 }, 0.0);
            for k in 0..n {
                let b = mu & qubit_bit(n, k) != 0;
                let mut a = p.qubit(k).amplitude(b);
                if k == j {
                    a += if b { dy } else { dx };
                }
                t *= a;
            }
            f += t;
        }
        f / (2f64.powi(n as i32)).sqrt()
    }

    #[test]
    fn lc_unitary_on_isolated_vertex_acts_locally() {
        let g = Graph::from_edges(3, [(1, 2)]).unwrap();
        let s = graph_state_vector::<f64>(&g);
        let t = apply_lc_unitary(&g, 0, &s).unwrap();
        // |+⟩ is an eigenvector of X, so only a phase appears
        let ov = s.inner(&t).unwrap();
        assert!((ov.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lc_unitary_maps_to_local_complement() {
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let s = graph_state_vector::<f64>(&tri);
        let t = apply_lc_unitary(&tri, 0, &s).unwrap();
        let lc = graph_state_vector::<f64>(&tri.local_complement(0).unwrap());
        assert!((lc.inner(&t).unwrap().norm() - 1.0).abs() < 1e-12);
        let tt = apply_lc_unitary(&tri, 0, &t).unwrap();
        assert_eq!(stabilizer_eigencheck(&tri, 0, &tt).unwrap(), Some(1));
    }

    #[test]
    fn json_pairs() {
        let p = ProductState::new(vec![QubitAmplitudePair::<f64>::zero()]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[[[1.0,0.0],[0.0,0.0]]]");
        let back: ProductState<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn works_in_single_precision() {
        let g = c5();
        let s = graph_state_vector::<f32>(&g);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-6);
        let p = ProductState::<f32>::uniform(5, QubitAmplitudePair::plus());
        let a = overlap(&g, &p).unwrap();
        let b = graph_state_vector::<f32>(&g)
            .inner(&product_state_vector(&p))
            .unwrap();
        assert!((a - b).norm() < 1e-6);
    }
}
