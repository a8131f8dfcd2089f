//! Single-qubit states that make up known closest product states.

use num_complex::Complex;

use crate::numeric::{CompensatedSum, Real};
use crate::state::QubitAmplitudePair;

/// `√p = √(½(1 − 1/√3))`, the `|0⟩` amplitude of the `Φ` states.
pub fn phi_sqrt_p() -> f64 {
    (0.5 * (1.0 - 1.0 / 3f64.sqrt())).sqrt()
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlphabetMember<T> {
    pub label: &'static str,
    pub state: QubitAmplitudePair<T>,
}

/// `x² + k·c² − 1`, evaluated with error-free products.
fn norm_defect(x: f64, c: f64, k: usize) -> f64 {
    let mut s = CompensatedSum::new();
    for (v, times) in [(x, 1), (c, k)] {
        let hi = v * v;
        let lo = v.mul_add(v, -hi);
        for _ in 0..times {
            s.add(hi);
            s.add(lo);
        }
    }
    s.add(-1.0);
    s.value()
}

/// Nudges `x` and `c` by at most two ulps each so that `x² + k·c²` is as
/// close to one as f64 allows.
fn tune(x: f64, c: f64, k: usize) -> (f64, f64) {
    let around = |v: f64| {
        let (d, u) = (v.next_down(), v.next_up());
        [v, d, u, d.next_down(), u.next_up()]
    };
    let mut best = (x, c, norm_defect(x, c, k).abs());
    for xv in around(x) {
        for cv in around(c) {
            let d = norm_defect(xv, cv, k).abs();
            if d < best.2 {
                best = (xv, cv, d);
            }
        }
    }
    (best.0, best.1)
}

/// `|0⟩, |1⟩, |+⟩, |−⟩, (|0⟩ − i|1⟩)/√2, (|0⟩ + i|1⟩)/√2, Φ₁..Φ₄`, in that order,
/// where `Φ_k = √p|0⟩ + √(1−p) e^{iφ_k}|1⟩` with `φ = π/4, −π/4, 3π/4, −3π/4`.
///
/// Amplitudes are rounded so that the stored pairs have unit norm to within
/// 1e-16 in exact arithmetic.
pub fn alphabet_constants<T: Real>() -> Vec<AlphabetMember<T>> {
    let (hx, hy) = tune(
        std::f64::consts::FRAC_1_SQRT_2,
        std::f64::consts::FRAC_1_SQRT_2,
        1,
    );
    let (px, pc) = tune(phi_sqrt_p(), (0.25 * (1.0 + 1.0 / 3f64.sqrt())).sqrt(), 2);
    let c = |re: f64, im: f64| Complex::new(T::of(re), T::of(im));
    let member = |label, x: Complex<T>, y: Complex<T>| AlphabetMember {
        label,
        state: QubitAmplitudePair::from_normalized(x, y),
    };
    vec![
        member("0", c(1.0, 0.0), c(0.0, 0.0)),
        member("1", c(0.0, 0.0), c(1.0, 0.0)),
        member("+", c(hx, 0.0), c(hy, 0.0)),
        member("-", c(hx, 0.0), c(-hy, 0.0)),
        member("o", c(hx, 0.0), c(0.0, -hy)),
        member("o*", c(hx, 0.0), c(0.0, hy)),
        member("Phi1", c(px, 0.0), c(pc, pc)),
        member("Phi2", c(px, 0.0), c(pc, -pc)),
        member("Phi3", c(px, 0.0), c(-pc, pc)),
        member("Phi4", c(px, 0.0), c(-pc, -pc)),
    ]
}
