#![allow(dead_code)]

use dsap::convex_sets::{ConvexSet, Shape};
use dsap::problems_io::{generate_random, GeneratorKind};
use dsap::rng::{self, Rng};
use dsap::strings::{Amalgamator, IndexVector, StarConstraints};
use dsap::{Point, Problem, Strategy, StrategyKind};
use rand::Rng as _;

pub const SET_KINDS: [&str; 4] = ["hyperplane", "halfspace", "ball", "box"];

pub fn point(v: Vec<f64>) -> Point {
    Point::new(v).unwrap()
}

pub fn uniform_cube(rng: &mut Rng, n: usize, half: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-half..half)).collect()
}

/// A random set of the given kind. Normals are deliberately not unit length.
pub fn random_set(rng: &mut Rng, kind: &str, n: usize) -> ConvexSet {
    match kind {
        "hyperplane" | "halfspace" => {
            let scale = rng.random_range(0.2..5.0);
            let a: Vec<f64> = rng::unit_vector(rng, n).into_iter().map(|c| c * scale).collect();
            let b = rng.random_range(-5.0..5.0);
            if kind == "hyperplane" {
                ConvexSet::hyperplane(point(a), b).unwrap()
            } else {
                ConvexSet::halfspace(point(a), b).unwrap()
            }
        }
        "ball" => {
            let r = if rng.random_range(0..20) == 0 { 0.0 } else { rng.random_range(0.0..3.0) };
            ConvexSet::ball(point(uniform_cube(rng, n, 5.0)), r).unwrap()
        }
        "box" => {
            let lower = uniform_cube(rng, n, 5.0);
            let upper = lower
                .iter()
                .map(|l| if rng.random_range(0..10) == 0 { *l } else { l + rng.random_range(0.0..4.0) })
                .collect();
            ConvexSet::bounding_box(point(lower), point(upper)).unwrap()
        }
        _ => unreachable!(),
    }
}

/// A point of the set: either a projected random point or one drawn inside it.
pub fn sample_in(rng: &mut Rng, set: &ConvexSet, n: usize) -> Vec<f64> {
    let w = point(uniform_cube(rng, n, 8.0));
    if rng.random_range(0..2) == 0 {
        return set.project(&w).unwrap().into_vec();
    }
    match set.shape() {
        Shape::Ball { center, radius } => {
            let u = rng::unit_vector(rng, n);
            let s = radius * rng.random::<f64>();
            center.coords().iter().zip(&u).map(|(c, d)| c + s * d).collect()
        }
        Shape::Box { lower, upper } => lower
            .coords()
            .iter()
            .zip(upper.coords())
            .map(|(l, u)| l + (u - l) * rng.random::<f64>())
            .collect(),
        _ => set.project(&w).unwrap().into_vec(),
    }
}

/// Distance from `x` to the set, from the set's defining inequalities only.
pub fn violation(set: &ConvexSet, x: &[f64]) -> f64 {
    let dot = |a: &[f64]| a.iter().zip(x).map(|(p, q)| p * q).sum::<f64>();
    let norm = |a: &[f64]| a.iter().map(|c| c * c).sum::<f64>().sqrt();
    match set.shape() {
        Shape::Hyperplane { normal, offset } => (dot(normal.coords()) - offset).abs() / norm(normal.coords()),
        Shape::Halfspace { normal, offset } => (dot(normal.coords()) - offset).max(0.0) / norm(normal.coords()),
        Shape::Ball { center, radius } => {
            let d = center.coords().iter().zip(x).map(|(c, q)| (q - c) * (q - c)).sum::<f64>().sqrt();
            (d - radius).max(0.0)
        }
        Shape::Box { lower, upper } => lower
            .coords()
            .iter()
            .zip(upper.coords())
            .zip(x)
            .map(|((l, u), q)| (l - q).max(q - u).max(0.0).powi(2))
            .sum::<f64>()
            .sqrt(),
    }
}

pub fn norm(x: &[f64]) -> f64 {
    x.iter().map(|c| c * c).sum::<f64>().sqrt()
}

pub fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum()
}

/// A random fit amalgamator whose strings have length at most `qbar`,
/// together with a Δ it satisfies.
pub fn random_amalgamator(rng: &mut Rng, m: usize, qbar: usize) -> (Amalgamator, f64) {
    let count = rng.random_range(1..=m.min(6));
    let mut strings: Vec<Vec<usize>> = vec![Vec::new(); count];
    // Every index lands in some string, so the family is fit.
    for i in 0..m {
        let t = rng.random_range(0..count);
        strings[t].push(i);
    }
    for s in &mut strings {
        if s.is_empty() {
            s.push(rng.random_range(0..m));
        }
        while s.len() < qbar && rng.random_range(0..3) == 0 {
            s.push(rng.random_range(0..m));
        }
        while s.len() > qbar {
            s.pop();
        }
        let len = s.len();
        for k in 0..len {
            s.swap(k, rng.random_range(k..len));
        }
    }
    // Trimming to q̄ may have dropped indices; put any missing ones in their own strings.
    let mut covered = vec![false; m];
    strings.iter().flatten().for_each(|&i| covered[i] = true);
    for (i, c) in covered.iter().enumerate() {
        if !c {
            strings.push(vec![i]);
        }
    }
    let count = strings.len();
    let delta = rng.random_range(0.1..0.99) * (1.0 / m as f64).min(1.0 / count as f64);
    let raw: Vec<f64> = (0..count).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let spare = 1.0 - delta * count as f64;
    let weights: Vec<f64> = raw.iter().map(|r| delta + spare * r / total).collect();
    let strings = strings.into_iter().map(|s| IndexVector::new(s).unwrap()).collect();
    (Amalgamator::new(m, strings, weights).unwrap(), delta)
}

/// One problem of the convergence suite together with its start point.
pub struct SuiteCase {
    pub seed: u64,
    pub problem: Problem,
    pub x0: Point,
}

pub const SUITE_SIZE: u64 = 50;
pub const SUITE_MARGIN: f64 = 0.1;

pub fn suite() -> Vec<SuiteCase> {
    (0..SUITE_SIZE)
        .map(|seed| {
            let mut r = rng::seeded(seed, 1_000);
            let n = r.random_range(1..=20);
            let m = r.random_range(1..=30);
            let problem = generate_random(GeneratorKind::Mixed, n, m, seed, SUITE_MARGIN).unwrap();
            let radius = 10.0 * r.random::<f64>();
            let x0 = point(rng::unit_vector(&mut r, n).into_iter().map(|c| c * radius).collect());
            SuiteCase { seed, problem, x0 }
        })
        .collect()
}

/// The five strategy kinds, each with Δ = 0.9·(largest admissible) and q̄ = m.
pub fn five_strategies(problem: &Problem, seed: u64) -> Vec<Strategy> {
    let m = problem.m();
    let fixed = {
        // Contiguous strings of length ≤ 3 weighted by length.
        let strings: Vec<IndexVector> = (0..m)
            .collect::<Vec<_>>()
            .chunks(3)
            .map(|c| IndexVector::new(c.to_vec()).unwrap())
            .collect();
        let weights = strings.iter().map(|s| s.len() as f64 / m as f64).collect();
        Amalgamator::new(m, strings, weights).unwrap()
    };
    let kinds = [
        StrategyKind::Sequential,
        StrategyKind::Simultaneous,
        StrategyKind::PartitionCyclic { blocks: m.min(3) },
        StrategyKind::RandomPartition { seed, max_blocks: m.min(4) },
        StrategyKind::FixedSap(fixed),
    ];
    kinds
        .into_iter()
        .map(|kind| {
            let probe = Strategy::new(kind.clone(), StarConstraints::new(m, 0.5 / m as f64, m).unwrap()).unwrap();
            let delta = 0.9 * probe.max_admissible_delta();
            Strategy::new(kind, StarConstraints::new(m, delta, m).unwrap()).unwrap()
        })
        .collect()
}
