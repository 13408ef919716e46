//! A sampling probe for bounded regularity: points of `B(0, M)` that are
//! within `δ` of every `C_i` should lie within `ε` of `C = ∩ C_i`.
//!
//! Distances to `C` are measured with Dykstra's alternating projection
//! algorithm, which converges to the true metric projection onto the
//! intersection. The probe can falsify a `(M, δ, ε)` triple but never proves
//! one.

use crate::convex_sets::ConvexSet;
use crate::error::{Error, Result};
use crate::point::{self, Point};
use crate::rng;

use super::problem::Problem;

const DYKSTRA_TOL: f64 = 1e-12;
const DYKSTRA_MAX_SWEEPS: usize = 200_000;
/// Relative slack on `d(x, C) > ε` so rounding alone never reports a counterexample.
pub const EPSILON_SLACK: f64 = 1e-9;

/// Metric projection of `x` onto `∩ sets` by Dykstra's algorithm.
///
/// Stops when a full sweep moves the iterate by at most `tol` and the iterate
/// is within `tol` of every set, or after `max_sweeps` sweeps.
pub fn project_onto_intersection(sets: &[ConvexSet], x: &Point, tol: f64, max_sweeps: usize) -> Result<Point> {
    for s in sets {
        x.check_dim(s.dim())?;
    }
    Ok(Point::from_vec_unchecked(dykstra(sets, x.coords(), tol, max_sweeps)))
}

fn dykstra(sets: &[ConvexSet], x: &[f64], tol: f64, max_sweeps: usize) -> Vec<f64> {
    let n = x.len();
    let mut cur = x.to_vec();
    let mut increments = vec![vec![0.0; n]; sets.len()];
    let mut shifted = vec![0.0; n];
    let mut projected = vec![0.0; n];
    for _ in 0..max_sweeps {
        let mut moved = 0.0;
        for (set, inc) in sets.iter().zip(increments.iter_mut()) {
            for ((s, c), q) in shifted.iter_mut().zip(&cur).zip(inc.iter()) {
                *s = c + q;
            }
            set.project_into(&shifted, &mut projected);
            for ((q, s), p) in inc.iter_mut().zip(&shifted).zip(&projected) {
                *q = s - p;
            }
            moved += point::distance_sq(&cur, &projected);
            cur.copy_from_slice(&projected);
        }
        if moved.sqrt() <= tol && sets.iter().all(|s| s.distance_slice(&cur) <= tol) {
            break;
        }
    }
    cur
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularityReport {
    pub radius: f64,
    pub delta: f64,
    pub epsilon: f64,
    pub samples: usize,
    /// Samples that landed in `B(0, M)` within `δ` of every set.
    pub premise_met: usize,
    /// Largest observed `d(x, C)` among those samples.
    pub max_distance_to_intersection: Option<f64>,
    pub exceeded: bool,
    pub message: String,
}

/// Draws `samples` candidate points and reports the worst `d(x, C)` seen
/// among those satisfying the premise.
///
/// Each candidate starts from a uniform point `u` of `B(0, M)` and is pulled
/// toward its projection `p` onto `C` just far enough that every `d(·, C_i)`
/// is at most `δ`; candidates that leave `B(0, M)` are rejected.
pub fn check_bounded_regularity(
    problem: &Problem,
    radius: f64,
    delta: f64,
    epsilon: f64,
    samples: usize,
    seed: u64,
) -> Result<RegularityReport> {
    for (name, v) in [("M", radius), ("δ", delta), ("ε", epsilon)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::InvalidArgument(format!("{name}={v} must be finite and > 0")));
        }
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be ≥ 1".into()));
    }
    let sets = problem.sets();
    let n = problem.dim();
    let mut rng = rng::seeded(seed, 0);
    let mut premise_met = 0;
    let mut worst: Option<f64> = None;

    for _ in 0..samples {
        let dir = rng::unit_vector(&mut rng, n);
        let r = radius * rand::Rng::random::<f64>(&mut rng).powf(1.0 / n as f64);
        let u: Vec<f64> = dir.iter().map(|d| d * r).collect();
        let p = dykstra(sets, &u, DYKSTRA_TOL, DYKSTRA_MAX_SWEEPS);
        let far = problem.proximity_slice(&u);
        let mut s = if far > delta { delta / far } else { 1.0 };
        let mut x: Vec<f64> = p.iter().zip(&u).map(|(pi, ui)| pi + s * (ui - pi)).collect();
        // `p` is only approximately in C; shrink once more if that pushed x past δ.
        let prox = problem.proximity_slice(&x);
        if prox > delta {
            s *= delta / prox * (1.0 - 1e-12);
            x = p.iter().zip(&u).map(|(pi, ui)| pi + s * (ui - pi)).collect();
        }
        if point::norm(&x) > radius || problem.proximity_slice(&x) > delta {
            continue;
        }
        premise_met += 1;
        let q = dykstra(sets, &x, DYKSTRA_TOL, DYKSTRA_MAX_SWEEPS);
        let d = point::distance_sq(&x, &q).sqrt();
        worst = Some(worst.map_or(d, |w: f64| w.max(d)));
    }

    let exceeded = worst.is_some_and(|w| w > epsilon * (1.0 + EPSILON_SLACK));
    let message = match worst {
        None => "premise never met".to_string(),
        Some(w) if exceeded => format!("counterexample: d(x,C)={w:e} > ε={epsilon:e}"),
        Some(w) => format!("no counterexample in {premise_met} samples: max d(x,C)={w:e} ≤ ε={epsilon:e}"),
    };
    Ok(RegularityReport {
        radius,
        delta,
        epsilon,
        samples,
        premise_met,
        max_distance_to_intersection: worst,
        exceeded,
        message,
    })
}
