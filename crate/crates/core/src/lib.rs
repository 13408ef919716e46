//! Dynamic string-averaging projection (DSAP) methods for convex
//! feasibility problems.
//!
//! Given closed convex sets `C_1, …, C_m` with nonempty intersection `C`, the
//! DSAP iteration applies, at every step, a possibly different family of
//! strings of projections and averages their end-points. This crate provides
//!
//! * exact projections onto hyperplanes, half-spaces, balls and boxes
//!   ([`convex_sets`]);
//! * index vectors, amalgamators and the admissible class `M*(Δ, q̄)`
//!   ([`strings`]);
//! * the iteration engine with pluggable strategies, per-step Fejér
//!   certificates and the a-priori iteration bound ([`dsap`]);
//! * bounded perturbations and superiorization ([`perturbation`]);
//! * problem/trace files and a seeded problem generator ([`problems_io`]).
//!
//! String evaluations inside one step, and independent runs in a batch, use
//! rayon when the `parallel` feature is on (the default). Reductions are
//! always sequential in a fixed order, so results are bitwise identical with
//! and without the feature.

pub mod batch;
pub mod convex_sets;
pub mod dsap;
mod error;
pub mod exec;
pub mod perturbation;
mod point;
pub mod problems_io;
pub mod rng;
pub mod strings;

pub use convex_sets::{ConvexSet, Shape, Tolerance};
pub use dsap::{solve, Problem, SolveOutcome, SolverConfig, Status, Strategy, StrategyKind};
pub use error::{Error, Result};
pub use exec::Execution;
pub use point::Point;
pub use strings::{Amalgamator, IndexVector, StarConstraints};
