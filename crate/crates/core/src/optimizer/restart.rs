//! One restart of the coordinate iteration.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::config::{OptimizerConfig, UpdateMode};
use super::engine::OverlapEngine;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::{norm_sqr, Real};
use crate::state::{fidelity, partial_overlaps, ProductState, QubitAmplitudePair};

/// Outcome of a single coordinate update.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordinateStep<T> {
    pub state: ProductState<T>,
    /// `|f|²` after the step: `|h_j|² + |g_j|²`, or unchanged when degenerate.
    pub fidelity: T,
    /// `h_j` and `g_j` both vanished, so qubit `j` was left as is.
    pub degenerate: bool,
}

/// One complete restart: initial state, trace and end point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct RestartRecord<T> {
    pub init: ProductState<T>,
    /// Fidelity at the initial state, then after every update (sequential)
    /// or every round (per-round).
    pub fidelity_trace: Vec<T>,
    pub final_state: ProductState<T>,
    pub final_f: T,
    pub converged: bool,
    /// Plateaued without reaching a stationary point.
    pub stalled: bool,
    pub rounds: usize,
    pub degenerate_steps: usize,
    /// `max_j |y_j^* h_j − x_j^* g_j|` over free coordinates at the end point.
    pub residual: T,
}

impl<T: Real> RestartRecord<T> {
    pub fn entanglement(&self) -> T {
        -self.final_f.log2()
    }
}

fn degenerate_threshold<T: Real>() -> T {
    T::of(1e-300).max(T::min_positive_value())
}

/// The maximizer `(h_j^*, g_j^*)/‖(h_j, g_j)‖` of `|x h_j + y g_j|²`, gauge fixed.
pub(crate) fn optimal_pair<T: Real>(h: Complex<T>, g: Complex<T>) -> Option<QubitAmplitudePair<T>> {
    if norm_sqr(h) + norm_sqr(g) < degenerate_threshold() {
        return None;
    }
    QubitAmplitudePair::new(h.conj(), g.conj()).ok()
}

fn pair_distance<T: Real>(a: &QubitAmplitudePair<T>, b: &QubitAmplitudePair<T>) -> T {
    (a.x() - b.x()).norm() + (a.y() - b.y()).norm()
}

/// Replaces qubit `j` by its conditional optimum given the other qubits.
pub fn coordinate_update<T: Real>(
    g: &Graph,
    p: &ProductState<T>,
    j: usize,
) -> Result<CoordinateStep<T>> {
    let (h, gj) = partial_overlaps(g, p, j)?;
    let mut state = p.clone();
    Ok(match optimal_pair(h, gj) {
        Some(q) => {
            state.set_qubit(j, q);
            CoordinateStep {
                state,
                fidelity: norm_sqr(h) + norm_sqr(gj),
                degenerate: false,
            }
        }
        None => CoordinateStep {
            fidelity: fidelity(g, p)?,
            state,
            degenerate: true,
        },
    })
}

/// Stationarity residual `max_j |y_j^* h_j − x_j^* g_j|` over coordinates outside `fixed_mask`.
pub fn stationarity_residual<T: Real>(
    g: &Graph,
    p: &ProductState<T>,
    fixed_mask: u32,
) -> Result<T> {
    if p.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: p.len(),
        });
    }
    let mut engine = OverlapEngine::new(g);
    Ok(residual(&mut engine, p, fixed_mask))
}

pub(crate) fn residual<T: Real>(
    engine: &mut OverlapEngine<T>,
    p: &ProductState<T>,
    fixed_mask: u32,
) -> T {
    (0..engine.n())
        .filter(|j| fixed_mask >> j & 1 == 0)
        .map(|j| {
            let (h, g) = engine.partials(p, j);
            let q = p.qubit(j);
            (q.y().conj() * h - q.x().conj() * g).norm()
        })
        .fold(T::zero(), T::max)
}

/// Runs the iteration from `init`; coordinates in `cfg.fixed` keep their
/// values in `init`.
pub fn run_restart<T: Real>(
    g: &Graph,
    init: &ProductState<T>,
    cfg: &OptimizerConfig<T>,
) -> Result<RestartRecord<T>> {
    cfg.validate()?;
    if init.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: init.len(),
        });
    }
    let mask = match &cfg.fixed {
        Some(f) => {
            f.validate(g.n())?;
            f.mask()
        }
        None => 0,
    };
    let mut engine = OverlapEngine::new(g);
    Ok(iterate(&mut engine, g, init.clone(), cfg, mask))
}

pub(crate) fn iterate<T: Real>(
    engine: &mut OverlapEngine<T>,
    g: &Graph,
    init: ProductState<T>,
    cfg: &OptimizerConfig<T>,
    fixed_mask: u32,
) -> RestartRecord<T> {
    let n = engine.n();
    let eps = T::of(cfg.convergence_eps);
    let step_tol = T::of(cfg.step_tol);
    let mut p = init.clone();
    let mut f_prev = norm_sqr(engine.overlap(&p));
    let mut trace = Vec::new();
    if cfg.keep_traces {
        trace.push(f_prev);
    }
    let mut best = f_prev;
    let mut since_best = 0;
    let mut degenerate_steps = 0;
    let mut converged = false;
    let mut stalled = false;
    let mut rounds = 0;

    while rounds < cfg.rounds {
        rounds += 1;
        let mut step = T::zero();
        engine.begin_sweep();
        let f_round = match cfg.mode {
            UpdateMode::Sequential => {
                let mut f = f_prev;
                for j in 0..n {
                    let (h, gj) = engine.sweep_partials(&p, j);
                    if fixed_mask >> j & 1 == 1 {
                        let q = p.qubit(j);
                        f = norm_sqr(q.x() * h + q.y() * gj);
                    } else if let Some(q) = optimal_pair(h, gj) {
                        step = step.max(pair_distance(p.qubit(j), &q));
                        p.set_qubit(j, q);
                        f = norm_sqr(h) + norm_sqr(gj);
                    } else {
                        degenerate_steps += 1;
                    }
                    if cfg.keep_traces {
                        trace.push(f);
                    }
                    engine.sweep_advance(p.qubit(j));
                }
                f
            }
            UpdateMode::PerRound => {
                let mut next = p.clone();
                for j in 0..n {
                    let (h, gj) = engine.sweep_partials(&p, j);
                    if fixed_mask >> j & 1 == 0 {
                        match optimal_pair(h, gj) {
                            Some(q) => {
                                step = step.max(pair_distance(p.qubit(j), &q));
                                next.set_qubit(j, q);
                            }
                            None => degenerate_steps += 1,
                        }
                    }
                    engine.sweep_advance(p.qubit(j));
                }
                p = next;
                let f = norm_sqr(engine.overlap(&p));
                if cfg.keep_traces {
                    trace.push(f);
                }
                f
            }
        };

        if (f_round - f_prev).abs() < eps && step < step_tol {
            converged = true;
            break;
        }
        f_prev = f_round;
        if f_round > best + eps {
            best = f_round;
            since_best = 0;
        } else {
            since_best += 1;
            if since_best >= cfg.stall_rounds
                && residual(engine, &p, fixed_mask) > T::of(cfg.stall_residual)
            {
                stalled = true;
                break;
            }
        }
    }

    let final_f = fidelity(g, &p).expect("dimensions checked");
    let res = residual(engine, &p, fixed_mask);
    RestartRecord {
        init,
        fidelity_trace: trace,
        final_state: p,
        final_f,
        converged,
        stalled,
        rounds,
        degenerate_steps,
        residual: res,
    }
}
