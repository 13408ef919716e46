//! Many independent solver runs at once.

use crate::dsap::{self, Problem, SolveOutcome, SolverConfig, Strategy};
use crate::error::Result;
use crate::exec::{self, Execution};
use crate::point::Point;

pub struct Job<'a> {
    pub problem: &'a Problem,
    pub strategy: &'a Strategy,
    pub x0: Point,
}

/// Solves every job; results come back in job order.
pub fn solve_batch(jobs: &[Job<'_>], config: &SolverConfig, exec: Execution) -> Vec<Result<SolveOutcome>> {
    map(jobs, exec, |job| dsap::solve(job.problem, job.strategy, config, &job.x0))
}

/// Order-preserving map over independent work items. Parallel under
/// [`Execution::Parallel`] or [`Execution::Auto`] when the `parallel`
/// feature is enabled.
pub fn map<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    exec::map_ordered(items, exec, usize::MAX, f)
}
