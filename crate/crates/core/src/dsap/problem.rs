use crate::convex_sets::ConvexSet;
use crate::error::{Error, Result};
use crate::point::Point;

/// Tolerance for checking a declared feasible point against every set.
pub(crate) const FEASIBLE_POINT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProblemMetadata {
    pub name: Option<String>,
    pub seed: Option<u64>,
}

/// A consistent convex feasibility problem: find a point of `∩ C_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    dim: usize,
    sets: Vec<ConvexSet>,
    known_feasible_point: Option<Point>,
    metadata: ProblemMetadata,
}

impl Problem {
    pub fn new(sets: Vec<ConvexSet>, known_feasible_point: Option<Point>) -> Result<Self> {
        let dim = sets
            .first()
            .ok_or_else(|| Error::InvalidProblem("a problem needs at least one set".into()))?
            .dim();
        for (i, s) in sets.iter().enumerate() {
            if s.dim() != dim {
                return Err(Error::InvalidProblem(format!(
                    "set index {i} has dimension {}, expected {dim}",
                    s.dim()
                )));
            }
        }
        if let Some(z) = &known_feasible_point {
            if z.dim() != dim {
                return Err(Error::InvalidProblem(format!(
                    "feasible point has dimension {}, expected {dim}",
                    z.dim()
                )));
            }
            for (i, s) in sets.iter().enumerate() {
                let d = s.distance(z)?;
                if d > FEASIBLE_POINT_TOL {
                    return Err(Error::InvalidProblem(format!(
                        "feasible point lies at distance {d:e} from set index {i}"
                    )));
                }
            }
        }
        Ok(Problem { dim, sets, known_feasible_point, metadata: ProblemMetadata::default() })
    }

    pub fn with_metadata(mut self, metadata: ProblemMetadata) -> Self {
        self.metadata = metadata;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of sets `m`.
    pub fn m(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[ConvexSet] {
        &self.sets
    }

    pub fn known_feasible_point(&self) -> Option<&Point> {
        self.known_feasible_point.as_ref()
    }

    pub fn metadata(&self) -> &ProblemMetadata {
        &self.metadata
    }

    /// `max_i d(x, C_i)`.
    pub fn proximity(&self, x: &Point) -> Result<f64> {
        x.check_dim(self.dim)?;
        Ok(self.proximity_slice(x.coords()))
    }

    pub(crate) fn proximity_slice(&self, x: &[f64]) -> f64 {
        self.sets.iter().map(|s| s.distance_slice(x)).fold(0.0, f64::max)
    }
}
