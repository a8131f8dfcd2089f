//! Closest-product-state search by fixed-point coordinate iteration.
//!
//! Each coordinate step replaces qubit `j` by `(h_j^*, g_j^*)` normalized,
//! where `h_j = ∂f/∂x_j` and `g_j = ∂f/∂y_j`. That is the exact maximizer of
//! `|f|²` over qubit `j` with the others held, so in sequential mode the
//! fidelity never decreases. Global search uses independent random restarts.

mod config;
mod engine;
mod restart;
mod snap;

pub use config::{FixedCoordinateSpec, FixedValue, OptimizerConfig, UpdateMode};
pub use restart::{
    coordinate_update, run_restart, stationarity_residual, CoordinateStep, RestartRecord,
};
pub use snap::{
    snap_canonical, snap_to_exact, stabilizer_canonicalize, QubitSnap, SnapResult, SNAP_THRESHOLD,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::{norm_sqr, Real};
use crate::state::{ProductState, QubitAmplitudePair};
use engine::OverlapEngine;

const PRESAMPLE_SALT: u64 = 0x5eed_0f9a_7e00_u64;
const PRESAMPLE_CHUNK: usize = 4096;
pub const PRESAMPLE_BINS: usize = 50;

/// The four measures that coincide for stabilizer states, plus the robustness `R`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct EntanglementMeasures<T> {
    pub relative_entropy: T,
    pub log_robustness: T,
    pub geometric: T,
    pub robustness: T,
}

/// `E = −log₂ F`. Values of `F` within `1e-12` above one are treated as one.
pub fn entanglement_from_fidelity<T: Real>(f: T) -> Result<T> {
    if f.is_nan() || f <= T::zero() || f > T::one() + T::of(1e-12) {
        return Err(Error::InvalidArgument(format!(
            "fidelity {f} outside (0, 1]"
        )));
    }
    Ok(-f.min(T::one()).log2())
}

/// `E_r = LR = E_g = E` and `R = 2^E − 1`.
pub fn measures_from_entanglement<T: Real>(e: T) -> Result<EntanglementMeasures<T>> {
    if e.is_nan() || e < T::zero() {
        return Err(Error::InvalidArgument(format!(
            "entanglement {e} is negative"
        )));
    }
    Ok(EntanglementMeasures {
        relative_entropy: e,
        log_robustness: e,
        geometric: e,
        robustness: e.exp2() - T::one(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct OptimizationResult<T> {
    pub best_f: T,
    pub entanglement: T,
    pub best_state: ProductState<T>,
    pub best_index: usize,
    pub records: Vec<RestartRecord<T>>,
    pub measures: EntanglementMeasures<T>,
    /// Coordinates held fixed in the run that produced `best_f`.
    pub fix_used: Option<FixedCoordinateSpec<T>>,
}

impl<T: Real> OptimizationResult<T> {
    fn from_records(
        records: Vec<RestartRecord<T>>,
        fix: Option<FixedCoordinateSpec<T>>,
    ) -> Result<Self> {
        let mut best_index = 0;
        for (i, r) in records.iter().enumerate() {
            if r.final_f > records[best_index].final_f {
                best_index = i;
            }
        }
        let best = &records[best_index];
        let entanglement = entanglement_from_fidelity(best.final_f)?;
        Ok(Self {
            best_f: best.final_f,
            entanglement,
            best_state: best.final_state.clone(),
            best_index,
            measures: measures_from_entanglement(entanglement)?,
            records,
            fix_used: fix,
        })
    }

    /// Fraction of restarts whose `−log₂ F` lies within `tol` of `e_ref`.
    pub fn success_fraction(&self, e_ref: T, tol: T) -> f64 {
        let hits = self
            .records
            .iter()
            .filter(|r| (r.entanglement() - e_ref).abs() <= tol)
            .count();
        hits as f64 / self.records.len() as f64
    }

    pub fn converged_count(&self) -> usize {
        self.records.iter().filter(|r| r.converged).count()
    }

    pub fn stalled_count(&self) -> usize {
        self.records.iter().filter(|r| r.stalled).count()
    }
}

/// Initial state for restart `index`: Haar-random qubits from the stream
/// `(seed, index)`, with fixed coordinates overwritten.
pub fn restart_init<T: Real>(
    n: usize,
    seed: u64,
    index: usize,
    fixed: Option<&FixedCoordinateSpec<T>>,
) -> ProductState<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let mut p = ProductState::random_haar(n, &mut rng);
    if let Some(spec) = fixed {
        for &(v, val) in spec.entries() {
            let q = match val {
                FixedValue::Given(q) => q,
                FixedValue::Random => QubitAmplitudePair::random_haar(&mut rng),
                FixedValue::Zero => QubitAmplitudePair::zero(),
            };
            p.set_qubit(v, q);
        }
    }
    p
}

/// Runs `cfg.restarts` independent restarts and keeps the best.
///
/// Deterministic in `(g, cfg)`: each restart owns the RNG stream
/// `(cfg.seed, index)` and ties go to the lowest index, whatever the thread count.
pub fn optimize<T: Real>(g: &Graph, cfg: &OptimizerConfig<T>) -> Result<OptimizationResult<T>> {
    cfg.validate()?;
    let mask = match &cfg.fixed {
        Some(f) => {
            f.validate(g.n())?;
            f.mask()
        }
        None => 0,
    };
    let one = |engine: &mut OverlapEngine<T>, i: usize| {
        let init = restart_init(g.n(), cfg.seed, i, cfg.fixed.as_ref());
        restart::iterate(engine, g, init, cfg, mask)
    };
    let records: Vec<RestartRecord<T>> = if cfg.parallel {
        (0..cfg.restarts)
            .into_par_iter()
            .map_init(|| OverlapEngine::new(g), one)
            .collect()
    } else {
        let mut engine = OverlapEngine::new(g);
        (0..cfg.restarts).map(|i| one(&mut engine, i)).collect()
    };
    OptimizationResult::from_records(records, cfg.fixed.clone())
}

/// As [`optimize`], holding the coordinates in `spec` fixed.
pub fn optimize_with_fixed<T: Real>(
    g: &Graph,
    spec: &FixedCoordinateSpec<T>,
    cfg: &OptimizerConfig<T>,
) -> Result<OptimizationResult<T>> {
    spec.validate(g.n())?;
    optimize(g, &cfg.clone().with_fixed(Some(spec.clone())))
}

/// Unconstrained search, then every single and every pair of coordinates
/// held at `|0⟩`. Returns the best branch; `fix_used` records which.
pub fn auto_fix_search<T: Real>(
    g: &Graph,
    cfg: &OptimizerConfig<T>,
) -> Result<OptimizationResult<T>> {
    let n = g.n();
    let base = cfg.clone().with_fixed(None);
    let mut best = optimize(g, &base)?;
    let mut branches: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
    for a in 0..n {
        for b in a + 1..n {
            branches.push(vec![a, b]);
        }
    }
    for vs in branches.into_iter().filter(|vs| vs.len() < n) {
        let spec = FixedCoordinateSpec::zeros(&vs)?;
        let r = optimize_with_fixed(g, &spec, &base)?;
        if r.best_f > best.best_f {
            best = r;
        }
    }
    Ok(best)
}

/// [`optimize`], escalating to [`auto_fix_search`] when any restart stalled.
pub fn optimize_with_escalation<T: Real>(
    g: &Graph,
    cfg: &OptimizerConfig<T>,
) -> Result<OptimizationResult<T>> {
    let r = optimize(g, cfg)?;
    if r.stalled_count() == 0 || cfg.fixed.is_some() {
        return Ok(r);
    }
    let escalated = auto_fix_search(g, cfg)?;
    Ok(if escalated.best_f > r.best_f {
        escalated
    } else {
        r
    })
}

/// Fraction of `runs` restarts reaching `|−log₂ F − e_ref| ≤ cfg.success_tol`.
pub fn success_probability<T: Real>(
    g: &Graph,
    e_ref: T,
    runs: usize,
    cfg: &OptimizerConfig<T>,
) -> Result<f64> {
    if runs == 0 {
        return Err(Error::InvalidArgument("runs must be at least 1".into()));
    }
    let mut c = cfg.clone().with_restarts(runs);
    c.keep_traces = false;
    let r = optimize(g, &c)?;
    Ok(r.success_fraction(e_ref, T::of(cfg.success_tol)))
}

/// Fidelity statistics over uniformly random product states.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct PresampleReport<T> {
    pub count: usize,
    pub min_f: T,
    pub max_f: T,
    pub mean_f: f64,
    pub best_state: ProductState<T>,
    /// Counts over `PRESAMPLE_BINS` equal bins of `[0, 1]`.
    pub histogram: Vec<u64>,
}

struct Chunk<T> {
    min_f: T,
    max_f: T,
    sum: f64,
    best: ProductState<T>,
    histogram: Vec<u64>,
}

/// Evaluates `F` at `count` Haar-random product states; no iteration.
pub fn presample<T: Real>(g: &Graph, count: usize, seed: u64) -> Result<PresampleReport<T>> {
    if count == 0 {
        return Err(Error::InvalidArgument(
            "presample count must be at least 1".into(),
        ));
    }
    let n = g.n();
    let chunks = count.div_ceil(PRESAMPLE_CHUNK);
    let parts: Vec<Chunk<T>> = (0..chunks)
        .into_par_iter()
        .map_init(
            || OverlapEngine::<T>::new(g),
            |engine: &mut OverlapEngine<T>, c: usize| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ PRESAMPLE_SALT);
                rng.set_stream(c as u64);
                let len = PRESAMPLE_CHUNK.min(count - c * PRESAMPLE_CHUNK);
                let mut out = Chunk {
                    min_f: T::infinity(),
                    max_f: T::neg_infinity(),
                    sum: 0.0,
                    best: ProductState::uniform(n, QubitAmplitudePair::zero()),
                    histogram: vec![0; PRESAMPLE_BINS],
                };
                for _ in 0..len {
                    let p = ProductState::random_haar(n, &mut rng);
                    let f: T = norm_sqr(engine.overlap(&p));
                    let bin = ((f.to_f64_lossy() * PRESAMPLE_BINS as f64) as usize)
                        .min(PRESAMPLE_BINS - 1);
                    out.histogram[bin] += 1;
                    out.sum += f.to_f64_lossy();
                    out.min_f = out.min_f.min(f);
                    if f > out.max_f {
                        out.max_f = f;
                        out.best = p;
                    }
                }
                out
            },
        )
        .collect();
    let mut it = parts.into_iter();
    let mut acc = it.next().expect("at least one chunk");
    for c in it {
        acc.min_f = acc.min_f.min(c.min_f);
        if c.max_f > acc.max_f {
            acc.max_f = c.max_f;
            acc.best = c.best;
        }
        acc.sum += c.sum;
        for (a, b) in acc.histogram.iter_mut().zip(c.histogram) {
            *a += b;
        }
    }
    Ok(PresampleReport {
        count,
        min_f: acc.min_f,
        max_f: acc.max_f,
        mean_f: acc.sum / count as f64,
        best_state: acc.best,
        histogram: acc.histogram,
    })
}
