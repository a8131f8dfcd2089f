//! Entanglement of graph states.
//!
//! For a graph state `|G⟩` the relative entropy of entanglement, the
//! logarithmic robustness and the geometric measure coincide, so a single
//! number `E = −log₂ max_φ |⟨G|φ⟩|²` (maximum over product states) describes
//! it. This crate brackets `E` with combinatorial bounds and computes it with
//! a monotone coordinate iteration for the closest product state.
//!
//! State and optimizer code is generic over the scalar type ([`Real`]); the
//! `*64` aliases below fix it to `f64`, which all accuracy targets assume.

pub mod bounds;
pub mod catalog;
pub mod error;
pub mod graph;
pub mod numeric;
pub mod optimizer;
pub mod report;
pub mod state;

pub use bounds::{
    bipartite_lower_bound, classify, cut_rank_lower_bound, locc_upper_bound,
    subgraph_recursion_bound, BoundsReport,
};
pub use catalog::{builtin_family, CatalogEntry, Category, ExactValue, Family};
pub use error::{Error, Result};
pub use graph::{EdgeSet, Graph, VertexSet};
pub use numeric::Real;
pub use optimizer::{
    auto_fix_search, optimize, optimize_with_fixed, FixedCoordinateSpec, FixedValue,
    OptimizationResult, OptimizerConfig, RestartRecord, UpdateMode,
};
pub use report::OptimizationReport;
pub use state::{ProductState, QubitAmplitudePair, StateVector};

pub type QubitAmplitudePair64 = QubitAmplitudePair<f64>;
pub type ProductState64 = ProductState<f64>;
pub type StateVector64 = StateVector<f64>;
pub type OptimizerConfig64 = OptimizerConfig<f64>;
pub type OptimizationResult64 = OptimizationResult<f64>;
pub type RestartRecord64 = RestartRecord<f64>;
pub type FixedCoordinateSpec64 = FixedCoordinateSpec<f64>;
pub type OptimizationReport64 = OptimizationReport<f64>;

pub type ProductState32 = ProductState<f32>;
pub type StateVector32 = StateVector<f32>;
pub type OptimizerConfig32 = OptimizerConfig<f32>;
