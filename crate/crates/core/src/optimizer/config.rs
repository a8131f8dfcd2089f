use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog::alphabet_constants;
use crate::error::{Error, Result};
use crate::numeric::Real;
use crate::state::QubitAmplitudePair;

/// How coordinate updates are scheduled within a round.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpdateMode {
    /// Each qubit is replaced as soon as its update is computed (monotone).
    #[default]
    Sequential,
    /// All qubits are recomputed from the round-start state, then replaced together.
    PerRound,
}

/// Value held by a coordinate that the iteration never updates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real", rename_all = "kebab-case")]
pub enum FixedValue<T> {
    Given(QubitAmplitudePair<T>),
    /// Fresh Haar-random value drawn at the start of every restart.
    Random,
    /// `|0⟩`
    Zero,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct FixedCoordinateSpec<T> {
    entries: Vec<(usize, FixedValue<T>)>,
}

impl<T: Real> FixedCoordinateSpec<T> {
    pub fn new(entries: Vec<(usize, FixedValue<T>)>) -> Result<Self> {
        let mut seen: Vec<usize> = entries.iter().map(|e| e.0).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidFix("fixed vertices must be distinct".into()));
        }
        Ok(Self { entries })
    }

    /// Every listed vertex held at `|0⟩`.
    pub fn zeros(vertices: &[usize]) -> Result<Self> {
        Self::new(vertices.iter().map(|&v| (v, FixedValue::Zero)).collect())
    }

    pub fn entries(&self) -> &[(usize, FixedValue<T>)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.entries.iter().any(|e| e.0 == v)
    }

    /// Checks the spec against an `n`-qubit problem.
    pub fn validate(&self, n: usize) -> Result<()> {
        if let Some(&(v, _)) = self.entries.iter().find(|e| e.0 >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if self.entries.len() >= n {
            return Err(Error::InvalidFix(
                "at least one coordinate must remain free".into(),
            ));
        }
        Ok(())
    }

    /// Mask of fixed vertices.
    pub(crate) fn mask(&self) -> u32 {
        self.entries.iter().fold(0, |m, e| m | 1 << e.0)
    }

    /// Short human-readable form, e.g. `0=|0>,3=random`.
    pub fn describe(&self) -> String {
        self.entries
            .iter()
            .map(|(v, val)| match val {
                FixedValue::Zero => format!("{v}=|0>"),
                FixedValue::Random => format!("{v}=random"),
                FixedValue::Given(q) => {
                    match alphabet_constants::<T>().iter().find(|m| m.state == *q) {
                        Some(m) => format!("{v}={}", m.label),
                        None => format!(
                            "{v}=({:.6}{:+.6}i, {:.6}{:+.6}i)",
                            q.x().re,
                            q.x().im,
                            q.y().re,
                            q.y().im
                        ),
                    }
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Comma-separated `vertex=value`, where value is `random`, `|0>`, or an
/// alphabet label with or without the ket (`+`, `|->`, `Phi1`, ...).
impl<T: Real> FromStr for FixedCoordinateSpec<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let alphabet = alphabet_constants::<T>();
        let mut entries = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (v, val) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidFix(format!("expected vertex=value, got `{item}`")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidFix(format!("bad vertex `{v}`")))?;
            let val = val.trim();
            let label = val
                .strip_prefix('|')
                .and_then(|t| t.strip_suffix('>'))
                .unwrap_or(val);
            let value = match label {
                "random" => FixedValue::Random,
                "0" => FixedValue::Zero,
                _ => match alphabet.iter().find(|m| m.label == label) {
                    Some(m) => FixedValue::Given(m.state),
                    None => return Err(Error::InvalidFix(format!("unknown value `{val}`"))),
                },
            };
            entries.push((v, value));
        }
        if entries.is_empty() {
            return Err(Error::InvalidFix("empty fix specification".into()));
        }
        Self::new(entries)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct OptimizerConfig<T> {
    pub rounds: usize,
    pub restarts: usize,
    pub mode: UpdateMode,
    pub seed: u64,
    /// Round-over-round fidelity change below which a restart counts as converged.
    pub convergence_eps: f64,
    /// Largest single-qubit amplitude change in the last round that still
    /// allows stopping; keeps the stationarity residual small at exit.
    pub step_tol: f64,
    /// Success threshold on `|E − E_ref|`.
    pub success_tol: f64,
    /// Rounds without improvement before a non-stationary restart is labeled stalled.
    pub stall_rounds: usize,
    /// Stationarity residual above which a plateau counts as a stall.
    pub stall_residual: f64,
    pub fixed: Option<FixedCoordinateSpec<T>>,
    /// Run restarts on the rayon pool. Results do not depend on this.
    pub parallel: bool,
    /// Keep per-update fidelity traces in the restart records.
    pub keep_traces: bool,
}

impl<T: Real> Default for OptimizerConfig<T> {
    fn default() -> Self {
        Self {
            rounds: 150,
            restarts: 1000,
            mode: UpdateMode::Sequential,
            seed: 0,
            convergence_eps: 1e-16,
            step_tol: 1e-12,
            success_tol: 1e-14,
            stall_rounds: 20,
            stall_residual: 1e-6,
            fixed: None,
            parallel: true,
            keep_traces: true,
        }
    }
}

impl<T: Real> OptimizerConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.rounds == 0 {
            return Err(Error::InvalidArgument("rounds must be at least 1".into()));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidArgument("restarts must be at least 1".into()));
        }
        if self.convergence_eps.is_nan() || self.convergence_eps < 0.0 {
            return Err(Error::InvalidArgument(
                "convergence_eps must be non-negative".into(),
            ));
        }
        Ok(())
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_rounds(mut self, rounds: usize) -> Self {
        self.rounds = rounds;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_mode(mut self, mode: UpdateMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_fixed(mut self, fixed: Option<FixedCoordinateSpec<T>>) -> Self {
        self.fixed = fixed;
        self
    }
}
