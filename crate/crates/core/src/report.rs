//! Serialized summaries of optimization runs.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::Real;
use crate::optimizer::{
    snap_canonical, EntanglementMeasures, FixedCoordinateSpec, OptimizationResult, OptimizerConfig,
    SnapResult, UpdateMode,
};
use crate::state::ProductState;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunSettings {
    pub rounds: usize,
    pub restarts: usize,
    pub mode: UpdateMode,
    pub seed: u64,
    pub success_tol: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestartsSummary {
    pub count: usize,
    pub converged: usize,
    pub stalled: usize,
    pub degenerate_steps: usize,
    /// Restarts within `success_tol` of the best `E`.
    pub success_fraction: f64,
    pub mean_rounds: f64,
}

/// JSON form of an [`OptimizationResult`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct OptimizationReport<T> {
    pub graph: Graph,
    #[serde(rename = "E")]
    pub entanglement: T,
    #[serde(rename = "best_F")]
    pub best_f: T,
    #[serde(rename = "E_measures")]
    pub measures: EntanglementMeasures<T>,
    pub fix_used: Option<FixedCoordinateSpec<T>>,
    pub best_state: ProductState<T>,
    pub best_index: usize,
    pub settings: RunSettings,
    pub restarts_summary: RestartsSummary,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub snapped_state: Option<SnapResult<T>>,
}

impl<T: Real> OptimizationReport<T> {
    pub fn new(g: &Graph, cfg: &OptimizerConfig<T>, r: &OptimizationResult<T>) -> Self {
        let count = r.records.len();
        let rounds: usize = r.records.iter().map(|x| x.rounds).sum();
        Self {
            graph: g.clone(),
            entanglement: r.entanglement,
            best_f: r.best_f,
            measures: r.measures,
            fix_used: r.fix_used.clone(),
            best_state: r.best_state.clone(),
            best_index: r.best_index,
            settings: RunSettings {
                rounds: cfg.rounds,
                restarts: cfg.restarts,
                mode: cfg.mode,
                seed: cfg.seed,
                success_tol: cfg.success_tol,
            },
            restarts_summary: RestartsSummary {
                count,
                converged: r.converged_count(),
                stalled: r.stalled_count(),
                degenerate_steps: r.records.iter().map(|x| x.degenerate_steps).sum(),
                success_fraction: r.success_fraction(r.entanglement, T::of(cfg.success_tol)),
                mean_rounds: if count == 0 {
                    0.0
                } else {
                    rounds as f64 / count as f64
                },
            },
            snapped_state: None,
        }
    }

    /// Fills `snapped_state` from `best_state`.
    pub fn with_snap(mut self) -> Result<Self> {
        self.snapped_state = Some(snap_canonical(&self.graph, &self.best_state)?);
        Ok(self)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: Self =
            serde_json::from_str(text).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        if r.best_state.len() != r.graph.n() {
            return Err(Error::DimensionMismatch {
                expected: r.graph.n(),
                got: r.best_state.len(),
            });
        }
        Ok(r)
    }
}

/// Fidelity traces as CSV: `restart,step,fidelity`, one row per recorded value.
pub fn traces_csv<T: Real>(r: &OptimizationResult<T>) -> String {
    let mut out = String::from("restart,step,fidelity\n");
    for (i, rec) in r.records.iter().enumerate() {
        for (k, f) in rec.fidelity_trace.iter().enumerate() {
            let _ = writeln!(out, "{i},{k},{:e}", f.to_f64_lossy());
        }
    }
    out
}

/// Per-restart outcome as CSV.
pub fn restarts_csv<T: Real>(r: &OptimizationResult<T>) -> String {
    let mut out = String::from("restart,final_f,entanglement,converged,stalled,rounds,residual\n");
    for (i, rec) in r.records.iter().enumerate() {
        let _ = writeln!(
            out,
            "{i},{:e},{:e},{},{},{},{:e}",
            rec.final_f.to_f64_lossy(),
            rec.entanglement().to_f64_lossy(),
            rec.converged,
            rec.stalled,
            rec.rounds,
            rec.residual.to_f64_lossy()
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimizer::optimize;

    fn bell_run() -> (Graph, OptimizerConfig<f64>, OptimizationResult<f64>) {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let cfg = OptimizerConfig::default().with_restarts(4).with_rounds(20);
        let r = optimize(&g, &cfg).unwrap();
        (g, cfg, r)
    }

    #[test]
    fn json_round_trip() {
        let (g, cfg, r) = bell_run();
        let rep = OptimizationReport::new(&g, &cfg, &r).with_snap().unwrap();
        let text = rep.to_json().unwrap();
        for key in [
            "\"E\"",
            "\"best_F\"",
            "\"E_measures\"",
            "\"fix_used\"",
            "\"restarts_summary\"",
            "\"snapped_state\"",
        ] {
            assert!(text.contains(key), "{key}");
        }
        let back = OptimizationReport::<f64>::from_json(&text).unwrap();
        assert_eq!(back, rep);
    }

    #[test]
    fn snapped_state_omitted_when_absent() {
        let (g, cfg, r) = bell_run();
        let text = OptimizationReport::new(&g, &cfg, &r).to_json().unwrap();
        assert!(!text.contains("snapped_state"));
    }

    #[test]
    fn csv_shapes() {
        let (_, _, r) = bell_run();
        let t = traces_csv(&r);
        let rows = r
            .records
            .iter()
            .map(|x| x.fidelity_trace.len())
            .sum::<usize>();
        assert_eq!(t.lines().count(), rows + 1);
        assert_eq!(restarts_csv(&r).lines().count(), 5);
    }

    #[test]
    fn mismatched_state_rejected() {
        let (g, cfg, r) = bell_run();
        let mut rep = OptimizationReport::new(&g, &cfg, &r);
        rep.graph = Graph::empty(3).unwrap();
        let text = rep.to_json().unwrap();
        assert!(OptimizationReport::<f64>::from_json(&text).is_err());
    }
}
