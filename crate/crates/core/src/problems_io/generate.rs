use std::fmt;
use std::str::FromStr;

use rand::Rng as _;

use crate::convex_sets::ConvexSet;
use crate::dsap::{Problem, ProblemMetadata};
use crate::error::{Error, Result};
use crate::point::Point;
use crate::rng;

/// Half-width of the box the feasible anchor is drawn from.
const ANCHOR_HALF_WIDTH: f64 = 2.0;
/// Balls are centred up to this far from the anchor.
const BALL_OFFSET_MAX: f64 = 3.0;
/// Box sides extend up to this far beyond `margin` on each side of the anchor.
const BOX_SLACK_MAX: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Halfspaces,
    /// Half-spaces, balls and boxes in equal proportion.
    Mixed,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorKind::Halfspaces => "halfspaces",
            GeneratorKind::Mixed => "mixed",
        })
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "halfspaces" => Ok(GeneratorKind::Halfspaces),
            "mixed" => Ok(GeneratorKind::Mixed),
            _ => Err(Error::InvalidArgument(format!("unknown generator kind `{s}` (halfspaces, mixed)"))),
        }
    }
}

/// A random problem whose sets all contain the ball `B(x*, margin)`.
///
/// `x*` is uniform in `[-2, 2]ⁿ` and becomes the known feasible point.
/// Half-spaces get a uniform unit normal `a` and offset `⟨a, x*⟩ + margin`;
/// balls are centred at distance `s ∈ [0, 3)` from `x*` with radius
/// `s + margin`; boxes extend `margin + U[0, 2)` past `x*` on each side.
/// Output depends only on the arguments.
pub fn generate_random(kind: GeneratorKind, n: usize, m: usize, seed: u64, margin: f64) -> Result<Problem> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("generator needs n ≥ 1 and m ≥ 1".into()));
    }
    if !(margin.is_finite() && margin > 0.0) {
        return Err(Error::InvalidArgument(format!("margin={margin} must be finite and > 0")));
    }
    let mut rng = rng::seeded(seed, 0);
    let anchor: Vec<f64> = (0..n).map(|_| rng.random_range(-ANCHOR_HALF_WIDTH..ANCHOR_HALF_WIDTH)).collect();
    let mut sets = Vec::with_capacity(m);
    for _ in 0..m {
        let shape = match kind {
            GeneratorKind::Halfspaces => 0,
            GeneratorKind::Mixed => rng.random_range(0..3),
        };
        let set = match shape {
            0 => {
                let a = rng::unit_vector(&mut rng, n);
                let b = crate::point::dot(&a, &anchor) + margin;
                ConvexSet::halfspace(Point::new(a)?, b)?
            }
            1 => {
                let dir = rng::unit_vector(&mut rng, n);
                let s = rng.random_range(0.0..BALL_OFFSET_MAX);
                let center: Vec<f64> = anchor.iter().zip(&dir).map(|(x, d)| x + s * d).collect();
                ConvexSet::ball(Point::new(center)?, s + margin)?
            }
            _ => {
                let lower = anchor.iter().map(|x| x - margin - rng.random_range(0.0..BOX_SLACK_MAX)).collect();
                let upper = anchor.iter().map(|x| x + margin + rng.random_range(0.0..BOX_SLACK_MAX)).collect();
                ConvexSet::bounding_box(Point::new(lower)?, Point::new(upper)?)?
            }
        };
        sets.push(set);
    }
    let metadata = ProblemMetadata { name: Some(format!("random-{kind}-n{n}-m{m}")), seed: Some(seed) };
    Ok(Problem::new(sets, Some(Point::new(anchor)?))?.with_metadata(metadata))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems_io::problem_to_string;

    #[test]
    fn anchor_ball_is_inside_every_set() {
        for seed in 0..20 {
            for kind in [GeneratorKind::Halfspaces, GeneratorKind::Mixed] {
                let n = 1 + (seed as usize % 6);
                let margin = 0.1;
                let prob = generate_random(kind, n, 12, seed, margin).unwrap();
                let z = prob.known_feasible_point().unwrap().clone();
                for s in prob.sets() {
                    assert_eq!(s.distance(&z).unwrap(), 0.0);
                }
                let mut r = rng::seeded(seed, 99);
                for _ in 0..100 {
                    let u = rng::unit_vector(&mut r, n);
                    let y: Vec<f64> = z.coords().iter().zip(&u).map(|(a, b)| a + margin * b).collect();
                    let y = Point::new(y).unwrap();
                    for s in prob.sets() {
                        assert!(s.distance(&y).unwrap() <= 1e-12, "{} misses the margin ball", s.kind_name());
                    }
                }
            }
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let a = generate_random(GeneratorKind::Mixed, 5, 9, 7, 0.1).unwrap();
        let b = generate_random(GeneratorKind::Mixed, 5, 9, 7, 0.1).unwrap();
        assert_eq!(problem_to_string(&a), problem_to_string(&b));
        let c = generate_random(GeneratorKind::Mixed, 5, 9, 8, 0.1).unwrap();
        assert_ne!(problem_to_string(&a), problem_to_string(&c));
    }

    #[test]
    fn mixed_uses_every_shape() {
        let prob = generate_random(GeneratorKind::Mixed, 3, 30, 1, 0.1).unwrap();
        let kinds: std::collections::BTreeSet<_> = prob.sets().iter().map(|s| s.kind_name()).collect();
        assert_eq!(kinds.len(), 3);
    }

    #[test]
    fn bad_arguments() {
        assert!(generate_random(GeneratorKind::Mixed, 0, 3, 1, 0.1).is_err());
        assert!(generate_random(GeneratorKind::Mixed, 2, 0, 1, 0.1).is_err());
        assert!(generate_random(GeneratorKind::Mixed, 2, 3, 1, 0.0).is_err());
        assert!("cones".parse::<GeneratorKind>().is_err());
    }
}
