use std::process::ExitCode;
use std::time::Instant;

use dsap::perturbation::{self, BetaRule, DirectionSource, Objective, PerturbationSchedule};
use dsap::problems_io::{self, GeneratorKind};
use dsap::strings::validate_star;
use dsap::{
    Amalgamator, Error, IndexVector, Point, Problem, Result, SolveOutcome, SolverConfig, StarConstraints, Status,
    Strategy, StrategyKind,
};

use crate::{
    BetaArgs, BetaRuleName, CheckArgs, GenerateArgs, KindName, ObjectiveName, RunArgs, SolveArgs, StrategyArgs,
    StrategyName, SuperiorizeArgs,
};

const DEFAULT_PARTITION_BLOCKS: usize = 2;

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn build_strategy(args: &StrategyArgs, m: usize) -> Result<Strategy> {
    let blocks = args.blocks.unwrap_or(DEFAULT_PARTITION_BLOCKS.min(m));
    if args.blocks.is_some() && !matches!(args.strategy, StrategyName::PartitionCyclic | StrategyName::RandomPartition) {
        return Err(usage("--blocks only applies to partition-cyclic and random-partition"));
    }
    if (args.strings.is_some() || args.weights.is_some()) && !matches!(args.strategy, StrategyName::FixedSap) {
        return Err(usage("--strings and --weights only apply to fixed-sap"));
    }
    let kind = match args.strategy {
        StrategyName::Sequential => StrategyKind::Sequential,
        StrategyName::Simultaneous => StrategyKind::Simultaneous,
        StrategyName::PartitionCyclic => StrategyKind::PartitionCyclic { blocks },
        StrategyName::RandomPartition => StrategyKind::RandomPartition { seed: args.seed, max_blocks: blocks },
        StrategyName::FixedSap => {
            let spec = args.strings.as_deref().ok_or_else(|| usage("fixed-sap needs --strings"))?;
            let strings = parse_strings(spec)?;
            let a = match &args.weights {
                Some(w) => Amalgamator::new(m, strings, w.0.clone())?,
                None => Amalgamator::uniform(m, strings)?,
            };
            StrategyKind::FixedSap(a)
        }
    };
    let delta = args.delta.unwrap_or(0.9 / m as f64);
    let qbar = args.qbar.unwrap_or(m);
    Strategy::new(kind, StarConstraints::new(m, delta, qbar)?)
}

/// "1,2;2,3" → strings (0,1) and (1,2).
fn parse_strings(spec: &str) -> Result<Vec<IndexVector>> {
    spec.split(';')
        .map(|t| {
            let indices = t
                .split(',')
                .map(|i| match i.trim().parse::<usize>() {
                    Ok(i) if i >= 1 => Ok(i - 1),
                    _ => Err(usage(format!("bad set index `{}` in --strings (1-based)", i.trim()))),
                })
                .collect::<Result<Vec<_>>>()?;
            IndexVector::new(indices)
        })
        .collect()
}

fn build_beta(rule: BetaRuleName, args: &BetaArgs) -> Result<BetaRule> {
    let beta0 = args.beta0.unwrap_or(1.0);
    match rule {
        BetaRuleName::Zero => Ok(BetaRule::Zero),
        BetaRuleName::Geometric => BetaRule::geometric(beta0, args.ratio.unwrap_or(0.5)),
        BetaRuleName::PowerLaw => BetaRule::power_law(beta0, args.exponent.unwrap_or(2.0)),
    }
}

struct Prepared {
    problem: Problem,
    strategy: Strategy,
    config: SolverConfig,
    x0: Point,
}

fn prepare(run: &RunArgs) -> Result<Prepared> {
    let problem = problems_io::load_problem(&run.strategy.problem)?;
    let strategy = build_strategy(&run.strategy, problem.m())?;
    let config = SolverConfig {
        proximity_tol: run.tol,
        max_iterations: usize::try_from(run.max_iters).map_err(|_| usage("--max-iters is too large"))?,
        ..SolverConfig::default()
    };
    config.validate()?;
    let x0 = match &run.x0 {
        Some(c) => Point::new(c.0.clone())?,
        None => Point::zeros(problem.dim()),
    };
    if x0.dim() != problem.dim() {
        return Err(Error::DimensionMismatch { expected: problem.dim(), found: x0.dim() });
    }
    if run.verbose {
        eprintln!(
            "problem: n={} m={}; strategy {} with Δ={} q̄={}",
            problem.dim(),
            problem.m(),
            strategy.name(),
            strategy.star().delta(),
            strategy.star().qbar()
        );
    }
    Ok(Prepared { problem, strategy, config, x0 })
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Converged => "converged",
        Status::MaxIterations => "max-iterations",
    }
}

fn exit_for(s: Status) -> ExitCode {
    match s {
        Status::Converged => ExitCode::SUCCESS,
        Status::MaxIterations => ExitCode::from(2),
    }
}

fn report_fejer(out: &SolveOutcome, verbose: bool) {
    if verbose {
        if let Some(m) = out.trace.min_fejer_margin() {
            eprintln!("smallest Fejér margin: {m:e}");
        }
    }
}

pub fn solve(args: SolveArgs) -> Result<ExitCode> {
    let beta = args.beta_rule.map(|r| build_beta(r, &args.beta)).transpose()?;
    if beta.is_none() && (args.beta.beta0.is_some() || args.beta.ratio.is_some() || args.beta.exponent.is_some()) {
        return Err(usage("--beta0, --ratio and --exponent need --beta-rule"));
    }
    let p = prepare(&args.run)?;
    let start = Instant::now();
    let out = match beta {
        None => dsap::solve(&p.problem, &p.strategy, &p.config, &p.x0)?,
        Some(rule) => {
            let schedule =
                PerturbationSchedule::new(rule, DirectionSource::SeededRandomUnit { seed: args.run.strategy.seed })?;
            perturbation::perturbed_solve(&p.problem, &p.strategy, &p.config, &p.x0, &schedule)?
        }
    };
    let elapsed = start.elapsed();
    if let Some(path) = &args.run.trace {
        problems_io::write_trace(&out.trace, path)?;
    }
    report_fejer(&out, args.run.verbose);

    println!("strategy: {}", p.strategy.name());
    println!("status: {}", status_name(out.status));
    println!("iterations: {}", out.iterations());
    println!("final proximity: {:e}", out.trace.final_proximity());
    println!("result: {}", out.result);
    println!("wall time: {:.6} s", elapsed.as_secs_f64());
    Ok(exit_for(out.status))
}

pub fn superiorize(args: SuperiorizeArgs) -> Result<ExitCode> {
    let rule = build_beta(args.beta_rule, &args.beta)?;
    let p = prepare(&args.run)?;
    let n = p.problem.dim();
    let vector = |v: &Option<crate::Csv>, flag: &str| -> Result<Point> {
        let c = v.as_ref().ok_or_else(|| usage(format!("this objective needs --{flag}")))?;
        let pt = Point::new(c.0.clone())?;
        if pt.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: pt.dim() });
        }
        Ok(pt)
    };
    let objective = match args.objective {
        ObjectiveName::SquaredNorm => Objective::SquaredNorm,
        ObjectiveName::Linear => Objective::Linear(vector(&args.c, "c")?),
        ObjectiveName::DistanceToAnchor => Objective::DistanceToAnchor(vector(&args.anchor, "anchor")?),
    };
    match args.objective {
        ObjectiveName::SquaredNorm if args.anchor.is_some() || args.c.is_some() => {
            return Err(usage("squared-norm takes neither --anchor nor --c"));
        }
        ObjectiveName::Linear if args.anchor.is_some() => return Err(usage("linear takes --c, not --anchor")),
        ObjectiveName::DistanceToAnchor if args.c.is_some() => {
            return Err(usage("distance-to-anchor takes --anchor, not --c"));
        }
        _ => {}
    }

    let start = Instant::now();
    let cmp = perturbation::compare_superiorization(&p.problem, &p.strategy, &p.config, &p.x0, &objective, rule)?;
    let elapsed = start.elapsed();
    if let Some(path) = &args.run.trace {
        problems_io::write_trace(&cmp.superiorized.trace, path)?;
    }
    report_fejer(&cmp.superiorized, args.run.verbose);

    let (b, s) = (&cmp.baseline, &cmp.superiorized);
    println!("objective: {}", objective.name());
    println!("beta rule: {rule}");
    println!("{:<18}{:<26}superiorized", "", "baseline");
    println!("{:<18}{:<26}{}", "status", status_name(b.status), status_name(s.status));
    println!("{:<18}{:<26}{}", "iterations", b.iterations(), s.iterations());
    let row = |label: &str, x: f64, y: f64| println!("{label:<18}{x:<26e}{y:e}");
    row("final proximity", b.trace.final_proximity(), s.trace.final_proximity());
    row("final objective", cmp.baseline_objective(), cmp.superiorized_objective());
    println!("wall time: {:.6} s", elapsed.as_secs_f64());
    Ok(exit_for(s.status))
}

pub fn generate(args: GenerateArgs) -> Result<ExitCode> {
    let kind = match args.kind {
        KindName::Halfspaces => GeneratorKind::Halfspaces,
        KindName::Mixed => GeneratorKind::Mixed,
    };
    let n = usize::try_from(args.dim).map_err(|_| usage("--dim is too large"))?;
    let m = usize::try_from(args.sets).map_err(|_| usage("--sets is too large"))?;
    let problem = problems_io::generate_random(kind, n, m, args.seed, args.margin)?;
    problems_io::save_problem(&problem, &args.out)?;
    println!("wrote {} (n={n}, m={m}, seed={})", args.out.display(), args.seed);
    Ok(ExitCode::SUCCESS)
}

pub fn check(args: CheckArgs) -> Result<ExitCode> {
    let problem = problems_io::load_problem(&args.strategy.problem)?;
    let strategy = build_strategy(&args.strategy, problem.m())?;
    let mut bad = 0;
    for k in 0..args.iterations {
        let a = strategy.emit(k);
        let report = validate_star(&a, strategy.star());
        for w in &report.warnings {
            eprintln!("warning: iteration {}: {w}", k + 1);
        }
        if !report.is_valid() {
            eprintln!("error: iteration {}: {report}", k + 1);
            bad += 1;
        }
    }
    println!("problem: n={} m={}", problem.dim(), problem.m());
    println!(
        "strategy: {} with Δ={} q̄={}",
        strategy.name(),
        strategy.star().delta(),
        strategy.star().qbar()
    );
    println!("checked {} amalgamators, {} invalid", args.iterations, bad);
    Ok(if bad == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
