use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::point::{self, Point};
use crate::strings;

use super::problem::Problem;
use super::strategy::Strategy;
use super::trace::{IterationRecord, IterationTrace, TraceColumns};

/// Relative slack allowed on the per-step Fejér certificate.
pub const FEJER_SLACK: f64 = 1e-9;

/// Iterate snapshots are kept while `n · (max_iterations + 1)` stays within this many scalars.
pub const DEFAULT_SNAPSHOT_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    /// Stop once `max_i d(x^k, C_i) ≤ proximity_tol`.
    pub proximity_tol: f64,
    pub max_iterations: usize,
    /// Iterations to run before the proximity stop applies.
    pub min_iterations: usize,
    /// Threshold for the drop index reported by [`IterationTrace::drop_index`].
    pub gamma: f64,
    /// Fail the run when a Fejér certificate is violated.
    pub certificate_checks: bool,
    pub snapshot_budget: usize,
    pub execution: Execution,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            proximity_tol: 1e-6,
            max_iterations: 10_000,
            min_iterations: 0,
            gamma: 1e-8,
            certificate_checks: true,
            snapshot_budget: DEFAULT_SNAPSHOT_BUDGET,
            execution: Execution::default(),
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.proximity_tol.is_finite() && self.proximity_tol > 0.0) {
            return Err(Error::InvalidArgument(format!("proximity_tol={} must be > 0", self.proximity_tol)));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidArgument("max_iterations must be ≥ 1".into()));
        }
        if self.min_iterations > self.max_iterations {
            return Err(Error::InvalidArgument("min_iterations must not exceed max_iterations".into()));
        }
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(Error::InvalidArgument(format!("gamma={} must be > 0", self.gamma)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Converged,
    MaxIterations,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOutcome {
    pub result: Point,
    pub status: Status,
    pub trace: IterationTrace,
}

impl SolveOutcome {
    pub fn iterations(&self) -> usize {
        self.trace.iterations()
    }

    pub fn converged(&self) -> bool {
        self.status == Status::Converged
    }
}

/// Runs `x^{k+1} = P_{Ω_k,w_k}(x^k)` from `x0` until the proximity target or
/// the iteration limit is reached.
pub fn solve(problem: &Problem, strategy: &Strategy, config: &SolverConfig, x0: &Point) -> Result<SolveOutcome> {
    run(problem, strategy, config, x0, None)
}

/// A point displaced before the amalgamator is applied.
pub(crate) struct Perturbation {
    pub point: Vec<f64>,
    pub beta: f64,
    pub direction_norm: f64,
    pub beta_sum: f64,
}

/// Per-step extension points used by the perturbed and superiorized runs.
pub(crate) trait IterationHook {
    fn perturb(&mut self, step: usize, x: &[f64]) -> Result<Perturbation>;
    fn objective(&self, x: &[f64]) -> Option<f64>;
    fn records_objective(&self) -> bool;
}

pub(crate) fn run(
    problem: &Problem,
    strategy: &Strategy,
    config: &SolverConfig,
    x0: &Point,
    mut hook: Option<&mut dyn IterationHook>,
) -> Result<SolveOutcome> {
    config.validate()?;
    x0.check_dim(problem.dim())?;
    if strategy.star().m() != problem.m() {
        return Err(Error::InvalidArgument(format!(
            "strategy is for m={} but the problem has m={}",
            strategy.star().m(),
            problem.m()
        )));
    }
    let sets = problem.sets();
    let reference = problem.known_feasible_point().map(Point::coords);
    let delta = strategy.star().delta();
    let columns = TraceColumns {
        fejer_margin: reference.is_some(),
        perturbation: hook.is_some(),
        objective: hook.as_ref().is_some_and(|h| h.records_objective()),
    };
    let keep_snapshots = problem
        .dim()
        .checked_mul(config.max_iterations.saturating_add(1))
        .is_some_and(|total| total <= config.snapshot_budget);

    let mut x = x0.coords().to_vec();
    let mut trace = IterationTrace {
        columns,
        initial_proximity: problem.proximity_slice(&x),
        initial_objective: hook.as_ref().and_then(|h| h.objective(&x)),
        records: Vec::new(),
        snapshots: keep_snapshots.then(|| vec![x0.clone()]),
    };
    let mut status = if trace.initial_proximity <= config.proximity_tol && config.min_iterations == 0 {
        Status::Converged
    } else {
        Status::MaxIterations
    };

    let mut k = 0;
    while status != Status::Converged && k < config.max_iterations {
        k += 1;
        let a = strategy.amalgamator(k - 1)?;
        let perturbation = match hook.as_deref_mut() {
            Some(h) => Some(h.perturb(k - 1, &x)?),
            None => None,
        };
        let input = perturbation.as_ref().map_or(x.as_slice(), |p| p.point.as_slice());
        if input.iter().any(|c| !c.is_finite()) {
            return Err(Error::Direction { iteration: k, reason: "perturbed point is not finite".into() });
        }
        let out = strings::amalgamate(sets, &a, input, config.execution, false);

        let fejer_margin = reference.map(|z| {
            let before = point::distance_sq(z, input);
            let margin = before - point::distance_sq(z, &out.next) - delta * out.phi_sum;
            (margin, -FEJER_SLACK * (1.0 + before))
        });
        if let Some((margin, floor)) = fejer_margin {
            if config.certificate_checks && margin < floor {
                return Err(Error::CertificateViolation { iteration: k, margin, floor });
            }
        }

        let step_norm = point::distance_sq(&x, &out.next).sqrt();
        x = out.next;
        let proximity = problem.proximity_slice(&x);
        trace.records.push(IterationRecord {
            k,
            proximity,
            phi_sum: out.phi_sum,
            step_norm,
            fejer_margin: fejer_margin.map(|(m, _)| m),
            beta: perturbation.as_ref().map(|p| p.beta),
            direction_norm: perturbation.as_ref().map(|p| p.direction_norm),
            beta_sum: perturbation.as_ref().map(|p| p.beta_sum),
            objective: hook.as_ref().and_then(|h| h.objective(&x)),
        });
        if let Some(snaps) = trace.snapshots.as_mut() {
            snaps.push(Point::from_vec_unchecked(x.clone()));
        }
        if proximity <= config.proximity_tol && k >= config.min_iterations {
            status = Status::Converged;
        }
    }

    Ok(SolveOutcome { result: Point::from_vec_unchecked(x), status, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex_sets::ConvexSet;
    use crate::dsap::StrategyKind;
    use crate::strings::{Amalgamator, StarConstraints};

    fn p(v: &[f64]) -> Point {
        Point::new(v.to_vec()).unwrap()
    }

    fn quadrant() -> Problem {
        Problem::new(
            vec![
                ConvexSet::halfspace(p(&[1.0, 0.0]), 0.0).unwrap(),
                ConvexSet::halfspace(p(&[0.0, 1.0]), 0.0).unwrap(),
            ],
            Some(p(&[-1.0, -1.0])),
        )
        .unwrap()
    }

    fn strategy(kind: StrategyKind, m: usize) -> Strategy {
        Strategy::new(kind, StarConstraints::new(m, 0.9 / m as f64, m).unwrap()).unwrap()
    }

    #[test]
    fn feasible_start_converges_immediately() {
        let prob = quadrant();
        let x0 = p(&[-0.5, -3.0]);
        let out = solve(&prob, &strategy(StrategyKind::Simultaneous, 2), &SolverConfig::default(), &x0).unwrap();
        assert_eq!(out.status, Status::Converged);
        assert_eq!(out.iterations(), 0);
        assert_eq!(out.result, x0);
    }

    #[test]
    fn single_set_sequential_converges_in_one_step() {
        let ball = ConvexSet::ball(p(&[1.0, 1.0]), 0.5).unwrap();
        let prob = Problem::new(vec![ball.clone()], None).unwrap();
        let x0 = p(&[4.0, -2.0]);
        let out = solve(&prob, &strategy(StrategyKind::Sequential, 1), &SolverConfig::default(), &x0).unwrap();
        assert_eq!(out.status, Status::Converged);
        assert_eq!(out.iterations(), 1);
        assert_eq!(out.result, ball.project(&x0).unwrap());
    }

    #[test]
    fn simultaneous_quadrant_halves() {
        let prob = quadrant();
        let config = SolverConfig { max_iterations: 3, ..SolverConfig::default() };
        let out = solve(&prob, &strategy(StrategyKind::Simultaneous, 2), &config, &p(&[1.0, 1.0])).unwrap();
        let snaps = out.trace.snapshots.as_ref().unwrap();
        assert_eq!(snaps[1], p(&[0.5, 0.5]));
        assert_eq!(snaps[2], p(&[0.25, 0.25]));
        assert_eq!(snaps[3], p(&[0.125, 0.125]));
        let prox: Vec<f64> = out.trace.records.iter().map(|r| r.proximity).collect();
        assert_eq!(prox, vec![0.5, 0.25, 0.125]);
        assert_eq!(out.status, Status::MaxIterations);
    }

    #[test]
    fn star_violation_reports_iteration() {
        let prob = quadrant();
        let sc = StarConstraints::new(2, 0.45, 2).unwrap();
        let a = Amalgamator::new(2, vec![crate::strings::IndexVector::single(0), crate::strings::IndexVector::single(1)], vec![0.6, 0.4]).unwrap();
        let s = Strategy::new(StrategyKind::FixedSap(a), sc).unwrap();
        let err = solve(&prob, &s, &SolverConfig::default(), &p(&[1.0, 1.0])).unwrap_err();
        assert!(matches!(err, Error::StarViolation { iteration: 1, .. }), "{err}");
    }

    #[test]
    fn config_validation() {
        let prob = quadrant();
        let s = strategy(StrategyKind::Sequential, 2);
        let x0 = p(&[1.0, 1.0]);
        for bad in [
            SolverConfig { max_iterations: 0, ..SolverConfig::default() },
            SolverConfig { proximity_tol: 0.0, ..SolverConfig::default() },
            SolverConfig { gamma: -1.0, ..SolverConfig::default() },
        ] {
            assert!(solve(&prob, &s, &bad, &x0).is_err());
        }
        assert!(solve(&prob, &s, &SolverConfig::default(), &p(&[1.0])).is_err());
        assert!(solve(&prob, &strategy(StrategyKind::Sequential, 3), &SolverConfig::default(), &x0).is_err());
    }

    #[test]
    fn snapshots_respect_budget() {
        let prob = quadrant();
        let config = SolverConfig { snapshot_budget: 10, ..SolverConfig::default() };
        let out = solve(&prob, &strategy(StrategyKind::Sequential, 2), &config, &p(&[1.0, 1.0])).unwrap();
        assert!(out.trace.snapshots.is_none());
        assert_eq!(out.trace.records.len(), 1);
    }

    #[test]
    fn inconsistent_problem_reports_max_iterations() {
        let prob = Problem::new(
            vec![
                ConvexSet::halfspace(p(&[1.0]), -1.0).unwrap(),
                ConvexSet::halfspace(p(&[-1.0]), -1.0).unwrap(),
            ],
            None,
        )
        .unwrap();
        let config = SolverConfig { max_iterations: 50, ..SolverConfig::default() };
        let out = solve(&prob, &strategy(StrategyKind::Simultaneous, 2), &config, &p(&[0.0])).unwrap();
        assert_eq!(out.status, Status::MaxIterations);
        assert_eq!(out.iterations(), 50);
    }
}
