//! The dynamic string-averaging projection iteration.
//!
//! Each step picks an amalgamator `(Ω_k, w_k)` from a [`Strategy`] and sets
//! `x^{k+1} = P_{Ω_k,w_k}(x^k)`. Every emitted amalgamator is checked against
//! `M*(Δ, q̄)` and, when the problem carries a known feasible point, the
//! per-step Fejér certificate is recorded (and optionally enforced).

mod bounds;
mod problem;
mod regularity;
mod solver;
mod strategy;
mod trace;

pub use bounds::{gamma_for_delta, k0_bound};
pub use problem::{Problem, ProblemMetadata};
pub use regularity::{check_bounded_regularity, project_onto_intersection, RegularityReport, EPSILON_SLACK};
pub use solver::{solve, SolveOutcome, SolverConfig, Status, DEFAULT_SNAPSHOT_BUDGET, FEJER_SLACK};
pub use strategy::{Strategy, StrategyKind, DELTA_SLACK};
pub use trace::{IterationRecord, IterationTrace, TraceColumns};

pub(crate) use solver::{run, IterationHook, Perturbation};
