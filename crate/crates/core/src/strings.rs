//! String operators and amalgamators.
//!
//! An index vector `t = (t_1, …, t_p)` names a string of projections applied
//! left to right, `P[t] = P_{t_p} ⋯ P_{t_1}`. An amalgamator `(Ω, w)` is a fit
//! family of strings with positive weights summing to one; it maps `x` to the
//! convex combination `Σ_t w(t) P[t](x)` of the string end-points.
//!
//! Set indices are zero-based in the API. `Display` renders index vectors
//! one-based, e.g. `(1,2,1)`, matching the usual mathematical notation.

use std::fmt;

use crate::convex_sets::ConvexSet;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::point::{self, Point};

/// Weight sums within this distance of one are accepted as-is.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;
/// Weight sums within this distance of one are renormalized; beyond it the
/// constructor fails.
pub const WEIGHT_RENORMALIZE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexVector(Vec<usize>);

impl IndexVector {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidIndexVector("index vector must have length ≥ 1".into()));
        }
        Ok(IndexVector(indices))
    }

    pub fn single(index: usize) -> Self {
        IndexVector(vec![index])
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// `p(t)`
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check_range(&self, m: usize) -> Result<()> {
        match self.0.iter().find(|&&i| i >= m) {
            Some(&index) => Err(Error::IndexOutOfRange { index, m }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for IndexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str(")")
    }
}

/// A fit family of strings `Ω` with a weight function `w`.
///
/// Strings keep the order they were given in; the convex combination is
/// accumulated in that order.
#[derive(Clone, Debug, PartialEq)]
pub struct Amalgamator {
    m: usize,
    strings: Vec<IndexVector>,
    weights: Vec<f64>,
}

impl Amalgamator {
    pub fn new(m: usize, strings: Vec<IndexVector>, weights: Vec<f64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidAmalgamator("m must be ≥ 1".into()));
        }
        if strings.is_empty() {
            return Err(Error::InvalidAmalgamator("Ω must contain at least one string".into()));
        }
        if strings.len() != weights.len() {
            return Err(Error::InvalidAmalgamator(format!(
                "{} strings but {} weights",
                strings.len(),
                weights.len()
            )));
        }
        for (t, w) in strings.iter().zip(&weights) {
            if !w.is_finite() || *w <= 0.0 {
                return Err(Error::InvalidAmalgamator(format!("w({t})={w} is not strictly positive")));
            }
            t.check_range(m)?;
        }
        let mut covered = vec![false; m];
        for t in &strings {
            for &i in t.indices() {
                covered[i] = true;
            }
        }
        if let Some(i) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidAmalgamator(format!("Ω is not fit: set {} appears in no string", i + 1)));
        }
        let sum: f64 = weights.iter().sum();
        let weights = if (sum - 1.0).abs() <= WEIGHT_SUM_TOL {
            weights
        } else if (sum - 1.0).abs() <= WEIGHT_RENORMALIZE_TOL {
            weights.into_iter().map(|w| w / sum).collect()
        } else {
            return Err(Error::InvalidAmalgamator(format!("weights sum to {sum}, not 1")));
        };
        Ok(Amalgamator { m, strings, weights })
    }

    /// Equal weights `1/|Ω|`.
    pub fn uniform(m: usize, strings: Vec<IndexVector>) -> Result<Self> {
        let w = 1.0 / strings.len().max(1) as f64;
        let weights = vec![w; strings.len()];
        Self::new(m, strings, weights)
    }

    /// One string `(1, …, m)` with weight one.
    pub fn sequential(m: usize) -> Result<Self> {
        Self::new(m, vec![IndexVector::new((0..m).collect())?], vec![1.0])
    }

    /// `m` singleton strings with weights `1/m`.
    pub fn simultaneous(m: usize) -> Result<Self> {
        Self::uniform(m, (0..m).map(IndexVector::single).collect())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn strings(&self) -> &[IndexVector] {
        &self.strings
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn max_string_len(&self) -> usize {
        self.strings.iter().map(IndexVector::len).max().unwrap_or(0)
    }

    pub fn min_weight(&self) -> f64 {
        self.weights.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn total_len(&self) -> usize {
        self.strings.iter().map(IndexVector::len).sum()
    }
}

/// The parameters `(Δ, q̄)` of the admissible class `M*` for `m` sets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StarConstraints {
    m: usize,
    delta: f64,
    qbar: usize,
}

impl StarConstraints {
    pub fn new(m: usize, delta: f64, qbar: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidStarConstraints("m must be ≥ 1".into()));
        }
        if !(delta > 0.0 && delta < 1.0 / m as f64) {
            return Err(Error::InvalidStarConstraints(format!(
                "Δ must lie in (0, 1/m); got Δ={delta} with m={m}"
            )));
        }
        if qbar < m {
            return Err(Error::InvalidStarConstraints(format!("string length m exceeds q̄: m={m} > q̄={qbar}")));
        }
        Ok(StarConstraints { m, delta, qbar })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn qbar(&self) -> usize {
        self.qbar
    }
}

/// Outcome of checking an amalgamator against `M*(Δ, q̄)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct StarReport {
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
}

impl StarReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for StarReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            f.write_str("valid")
        } else {
            f.write_str(&self.violations.join("; "))
        }
    }
}

pub fn validate_star(a: &Amalgamator, sc: &StarConstraints) -> StarReport {
    let mut report = StarReport::default();
    if a.m != sc.m {
        report
            .violations
            .push(format!("amalgamator is for m={} but constraints are for m={}", a.m, sc.m));
    }
    for (t, &w) in a.strings.iter().zip(&a.weights) {
        if t.len() > sc.qbar {
            report.violations.push(format!("p({t})={} > q̄={}", t.len(), sc.qbar));
        }
        if w < sc.delta {
            report.violations.push(format!("w({t})={w} < Δ={}", sc.delta));
        }
        if let Some(&i) = t.indices().iter().find(|&&i| i >= sc.m) {
            report.violations.push(format!("index {} in {t} exceeds m={}", i + 1, sc.m));
        }
    }
    let sum: f64 = a.weights.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
        report.violations.push(format!("weights sum to {sum}, not 1"));
    }
    for (k, t) in a.strings.iter().enumerate() {
        if a.strings[..k].contains(t) {
            report.warnings.push(format!("string {t} occurs more than once in Ω"));
        }
    }
    report
}

/// The stages of one string: `P_{t_1}(x)`, `P_{t_2}P_{t_1}(x)`, …, `P[t](x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StringResult {
    pub stages: Vec<Point>,
}

impl StringResult {
    pub fn endpoint(&self) -> &Point {
        self.stages.last().expect("strings have length ≥ 1")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AmalgamatorStep {
    pub next: Point,
    pub strings: Vec<StringResult>,
    /// Unweighted `Σ_{t∈Ω} φ[t](x)`.
    pub phi_sum: f64,
}

fn check_problem(sets: &[ConvexSet], x: &Point) -> Result<()> {
    let first = sets
        .first()
        .ok_or_else(|| Error::InvalidArgument("at least one set is required".into()))?;
    x.check_dim(first.dim())?;
    for s in sets {
        if s.dim() != x.dim() {
            return Err(Error::DimensionMismatch { expected: x.dim(), found: s.dim() });
        }
    }
    Ok(())
}

pub fn apply_string(sets: &[ConvexSet], t: &IndexVector, x: &Point) -> Result<StringResult> {
    check_problem(sets, x)?;
    t.check_range(sets.len())?;
    let eval = eval_string(sets, t, x.coords(), true);
    let stages = eval.stages.unwrap_or_default().into_iter().map(Point::from_vec_unchecked).collect();
    Ok(StringResult { stages })
}

/// `φ[t](x) = ‖x − s_1‖² + Σ_{i<p} ‖s_{i+1} − s_i‖²` over the stages of `t` at `x`.
pub fn phi(t: &IndexVector, x: &Point, stages: &[Point]) -> Result<f64> {
    if stages.len() != t.len() {
        return Err(Error::StageCount { expected: t.len(), found: stages.len() });
    }
    let mut prev = x.coords();
    let mut sum = 0.0;
    for s in stages {
        s.check_dim(x.dim())?;
        sum += point::distance_sq(prev, s.coords());
        prev = s.coords();
    }
    Ok(sum)
}

pub fn apply_amalgamator(sets: &[ConvexSet], a: &Amalgamator, x: &Point) -> Result<AmalgamatorStep> {
    apply_amalgamator_with(sets, a, x, Execution::default())
}

pub fn apply_amalgamator_with(
    sets: &[ConvexSet],
    a: &Amalgamator,
    x: &Point,
    exec: Execution,
) -> Result<AmalgamatorStep> {
    if a.m != sets.len() {
        return Err(Error::InvalidAmalgamator(format!(
            "amalgamator is for m={} but the problem has {} sets",
            a.m,
            sets.len()
        )));
    }
    check_problem(sets, x)?;
    let out = amalgamate(sets, a, x.coords(), exec, true);
    let strings = out
        .evals
        .into_iter()
        .map(|e| StringResult {
            stages: e.stages.unwrap_or_default().into_iter().map(Point::from_vec_unchecked).collect(),
        })
        .collect();
    Ok(AmalgamatorStep { next: Point::from_vec_unchecked(out.next), strings, phi_sum: out.phi_sum })
}

pub(crate) struct StringEval {
    pub endpoint: Vec<f64>,
    pub phi: f64,
    pub stages: Option<Vec<Vec<f64>>>,
}

pub(crate) struct Amalgamated {
    pub next: Vec<f64>,
    pub evals: Vec<StringEval>,
    pub phi_sum: f64,
}

/// Runs one string from `x`, accumulating φ along the way. Inputs are
/// assumed validated.
pub(crate) fn eval_string(sets: &[ConvexSet], t: &IndexVector, x: &[f64], keep_stages: bool) -> StringEval {
    let mut cur = x.to_vec();
    let mut next = vec![0.0; x.len()];
    let mut phi = 0.0;
    let mut stages = keep_stages.then(|| Vec::with_capacity(t.len()));
    for &i in t.indices() {
        sets[i].project_into(&cur, &mut next);
        phi += point::distance_sq(&cur, &next);
        if let Some(stages) = stages.as_mut() {
            stages.push(next.clone());
        }
        std::mem::swap(&mut cur, &mut next);
    }
    StringEval { endpoint: cur, phi, stages }
}

/// Evaluates every string of `a` at `x` (possibly in parallel) and combines
/// the end-points sequentially in Ω order.
pub(crate) fn amalgamate(sets: &[ConvexSet], a: &Amalgamator, x: &[f64], exec: Execution, keep_stages: bool) -> Amalgamated {
    let work = a.total_len() * x.len();
    let evals = exec::map_ordered(&a.strings, exec, work, |t| eval_string(sets, t, x, keep_stages));
    let mut next = vec![0.0; x.len()];
    let mut phi_sum = 0.0;
    for (e, &w) in evals.iter().zip(&a.weights) {
        for (acc, v) in next.iter_mut().zip(&e.endpoint) {
            *acc += w * v;
        }
        phi_sum += e.phi;
    }
    Amalgamated { next, evals, phi_sum }
}
