use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Convex feasibility via dynamic string-averaging projections.
#[derive(Parser, Debug)]
#[command(name = "dsap", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the (optionally perturbed) iteration on a problem file.
    Solve(SolveArgs),
    /// Compare an unperturbed run with a superiorized one.
    Superiorize(SuperiorizeArgs),
    /// Write a random consistent problem file.
    Generate(GenerateArgs),
    /// Validate a problem file and a strategy's emitted amalgamators.
    Check(CheckArgs),
}

#[derive(Args, Debug)]
struct StrategyArgs {
    /// Problem file (`.cfp.json`).
    #[arg(long)]
    problem: PathBuf,
    #[arg(long, value_enum, default_value_t = StrategyName::Sequential)]
    strategy: StrategyName,
    /// Strings per step for partition-cyclic; upper bound for random-partition.
    #[arg(long)]
    blocks: Option<usize>,
    /// Strings for fixed-sap, 1-based, e.g. "1,2;2,3".
    #[arg(long)]
    strings: Option<String>,
    /// Weights for fixed-sap, e.g. "0.5,0.5". Uniform when omitted.
    #[arg(long, allow_hyphen_values = true)]
    weights: Option<Csv>,
    /// Lower bound on weights. Defaults to 0.9/m.
    #[arg(long)]
    delta: Option<f64>,
    /// Upper bound on string length. Defaults to m.
    #[arg(long)]
    qbar: Option<usize>,
    /// Seed for random strategies and random perturbation directions.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    strategy: StrategyArgs,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_iters: u64,
    /// Starting point. Defaults to the origin.
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<Csv>,
    /// Write the iteration trace as CSV.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Args, Debug)]
struct BetaArgs {
    #[arg(long)]
    beta0: Option<f64>,
    #[arg(long)]
    ratio: Option<f64>,
    #[arg(long)]
    exponent: Option<f64>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Perturb with seeded random unit directions scaled by this rule.
    #[arg(long, value_enum)]
    beta_rule: Option<BetaRuleName>,
    #[command(flatten)]
    beta: BetaArgs,
}

#[derive(Args, Debug)]
struct SuperiorizeArgs {
    #[command(flatten)]
    run: RunArgs,
    #[arg(long, value_enum, default_value_t = BetaRuleName::Geometric)]
    beta_rule: BetaRuleName,
    #[command(flatten)]
    beta: BetaArgs,
    #[arg(long, value_enum)]
    objective: ObjectiveName,
    /// Anchor point for distance-to-anchor.
    #[arg(long, conflicts_with = "c", allow_hyphen_values = true)]
    anchor: Option<Csv>,
    /// Coefficients for linear.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<Csv>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_enum, default_value_t = KindName::Mixed)]
    kind: KindName,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    dim: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    sets: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.1)]
    margin: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    strategy: StrategyArgs,
    /// Number of emitted amalgamators to validate.
    #[arg(long, default_value_t = 100)]
    iterations: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyName {
    Sequential,
    Simultaneous,
    PartitionCyclic,
    RandomPartition,
    FixedSap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BetaRuleName {
    Zero,
    Geometric,
    PowerLaw,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ObjectiveName {
    SquaredNorm,
    Linear,
    DistanceToAnchor,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindName {
    Halfspaces,
    Mixed,
}

/// Comma-separated reals.
#[derive(Clone, Debug)]
struct Csv(Vec<f64>);

impl FromStr for Csv {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Csv)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Solve(a) => commands::solve(a),
        Command::Superiorize(a) => commands::superiorize(a),
        Command::Generate(a) => commands::generate(a),
        Command::Check(a) => commands::check(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
