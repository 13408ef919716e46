//! Bounded perturbations of the DSAP iteration and superiorization.
//!
//! The perturbed recursion is `x^{k+1} = P_{Ω_k,w_k}(x^k + β_k v^k)` with
//! `Σ β_k < ∞` and `‖v^k‖ ≤ V`. Superiorization picks `v^k` as a normalized
//! negative subgradient of an objective, steering the feasibility-seeking
//! iteration toward lower objective values without giving up convergence
//! to a feasible point.

mod objective;
mod schedule;

use std::fmt;

use crate::dsap::{self, IterationHook, Perturbation, Problem, SolveOutcome, SolverConfig, Status, Strategy};
use crate::error::Result;
use crate::exec;
use crate::point::{self, Point};

pub use objective::{descent_direction, Objective};
pub use schedule::{BetaRule, DirectionSource, PerturbationSchedule};

use schedule::DirectionStream;

struct PerturbationHook<'a> {
    beta: BetaRule,
    directions: DirectionStream<'a>,
    beta_sum: f64,
    objective: Option<&'a Objective>,
}

impl IterationHook for PerturbationHook<'_> {
    fn perturb(&mut self, step: usize, x: &[f64]) -> Result<Perturbation> {
        let beta = self.beta.beta(step);
        let v = self.directions.next(step, x)?;
        self.beta_sum += beta;
        // β = 0 leaves x untouched so the run matches the unperturbed one bit for bit.
        let point = if beta == 0.0 {
            x.to_vec()
        } else {
            x.iter().zip(&v).map(|(xi, vi)| xi + beta * vi).collect()
        };
        Ok(Perturbation { point, beta, direction_norm: point::norm(&v), beta_sum: self.beta_sum })
    }

    fn objective(&self, x: &[f64]) -> Option<f64> {
        self.objective.map(|o| o.value_slice(x))
    }

    fn records_objective(&self) -> bool {
        self.objective.is_some()
    }
}

/// Runs the perturbed recursion. With a zero schedule the result and the
/// shared trace columns are bitwise identical to [`dsap::solve`].
pub fn perturbed_solve(
    problem: &Problem,
    strategy: &Strategy,
    config: &SolverConfig,
    x0: &Point,
    schedule: &PerturbationSchedule,
) -> Result<SolveOutcome> {
    run_with(problem, strategy, config, x0, schedule, None)
}

/// Perturbed run with `v^k = −g^k / max(1, ‖g^k‖)`, `g^k` the objective's
/// subgradient at `x^k`. The trace records the objective at every iterate.
pub fn superiorize(
    problem: &Problem,
    strategy: &Strategy,
    config: &SolverConfig,
    x0: &Point,
    objective: &Objective,
    beta: BetaRule,
) -> Result<SolveOutcome> {
    let schedule = PerturbationSchedule::new(beta, DirectionSource::SubgradientObjective(objective.clone()))?;
    run_with(problem, strategy, config, x0, &schedule, Some(objective))
}

fn run_with(
    problem: &Problem,
    strategy: &Strategy,
    config: &SolverConfig,
    x0: &Point,
    schedule: &PerturbationSchedule,
    objective: Option<&Objective>,
) -> Result<SolveOutcome> {
    schedule.beta_rule().validate()?;
    if let Some(obj) = objective {
        obj.check_dim(problem.dim())?;
    }
    let mut hook = PerturbationHook {
        beta: *schedule.beta_rule(),
        directions: schedule.start(problem.dim())?,
        beta_sum: 0.0,
        objective,
    };
    dsap::run(problem, strategy, config, x0, Some(&mut hook))
}

/// Unperturbed and superiorized runs from the same start, both tracking the objective.
#[derive(Clone, Debug)]
pub struct SuperiorizationComparison {
    pub baseline: SolveOutcome,
    pub superiorized: SolveOutcome,
}

impl SuperiorizationComparison {
    pub fn baseline_objective(&self) -> f64 {
        self.baseline.trace.final_objective().expect("objective is recorded")
    }

    pub fn superiorized_objective(&self) -> f64 {
        self.superiorized.trace.final_objective().expect("objective is recorded")
    }
}

pub fn compare_superiorization(
    problem: &Problem,
    strategy: &Strategy,
    config: &SolverConfig,
    x0: &Point,
    objective: &Objective,
    beta: BetaRule,
) -> Result<SuperiorizationComparison> {
    let baseline = superiorize(problem, strategy, config, x0, objective, BetaRule::Zero)?;
    let superiorized = superiorize(problem, strategy, config, x0, objective, beta)?;
    Ok(SuperiorizationComparison { baseline, superiorized })
}

#[derive(Clone, Debug, PartialEq)]
pub struct VariantSummary {
    pub label: String,
    pub status: Status,
    pub iterations: usize,
    pub final_proximity: f64,
    /// Closed-form `Σ β_k` of the schedule.
    pub beta_total: f64,
    pub result: Point,
    /// Final proximity within the configured tolerance.
    pub resilient: bool,
}

/// Baseline-versus-perturbed comparison.
///
/// Limits of different variants may differ; only feasibility of each limit
/// is checked. A finite experiment witnesses resilience for the given start
/// point and schedules; it does not verify convergence from every start.
#[derive(Clone, Debug, PartialEq)]
pub struct ResilienceReport {
    pub baseline: VariantSummary,
    pub variants: Vec<VariantSummary>,
    /// Pairwise distances between final points, baseline first.
    pub limit_distances: Vec<Vec<f64>>,
    pub all_resilient: bool,
}

impl ResilienceReport {
    pub const NOTE: &'static str =
        "witnessed for this start point and these schedules only; not a proof of resilience for all starts";
}

pub fn resilience_experiment(
    problem: &Problem,
    strategy: &Strategy,
    config: &SolverConfig,
    x0: &Point,
    schedules: &[PerturbationSchedule],
) -> Result<ResilienceReport> {
    for s in schedules {
        s.beta_rule().validate()?;
    }
    let baseline = dsap::solve(problem, strategy, config, x0)?;
    let baseline = summarize("unperturbed".into(), 0.0, baseline, config);
    let runs = exec::map_ordered(schedules, config.execution, usize::MAX, |s| {
        perturbed_solve(problem, strategy, config, x0, s)
            .map(|out| summarize(describe(s), s.beta_rule().series_limit(), out, config))
    });
    let variants = runs.into_iter().collect::<Result<Vec<_>>>()?;

    let points: Vec<&Point> = std::iter::once(&baseline.result).chain(variants.iter().map(|v| &v.result)).collect();
    let limit_distances = points.iter().map(|a| points.iter().map(|b| a.distance(b)).collect()).collect();
    let all_resilient = baseline.resilient && variants.iter().all(|v| v.resilient);
    Ok(ResilienceReport { baseline, variants, limit_distances, all_resilient })
}

fn summarize(label: String, beta_total: f64, out: SolveOutcome, config: &SolverConfig) -> VariantSummary {
    let final_proximity = out.trace.final_proximity();
    VariantSummary {
        label,
        status: out.status,
        iterations: out.iterations(),
        final_proximity,
        beta_total,
        resilient: final_proximity <= config.proximity_tol,
        result: out.result,
    }
}

fn describe(s: &PerturbationSchedule) -> String {
    format!("{} × {}", s.beta_rule(), s.direction_source())
}

impl fmt::Display for BetaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BetaRule::Geometric { beta0, ratio } => write!(f, "geometric(β0={beta0}, r={ratio})"),
            BetaRule::PowerLaw { beta0, exponent } => write!(f, "power-law(β0={beta0}, p={exponent})"),
            BetaRule::Zero => f.write_str("zero"),
        }
    }
}

impl fmt::Display for DirectionSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DirectionSource::FixedVector(v) => write!(f, "fixed{v}"),
            DirectionSource::SeededRandomUnit { seed } => write!(f, "random-unit(seed={seed})"),
            DirectionSource::SubgradientObjective(o) => write!(f, "subgradient({})", o.name()),
        }
    }
}
