use crate::error::{Error, Result};
use crate::point::{self, Point};

/// A differentiable objective for superiorization.
#[derive(Clone, Debug, PartialEq)]
pub enum Objective {
    /// `‖x‖²`
    SquaredNorm,
    /// `⟨c, x⟩`
    Linear(Point),
    /// `‖x − a‖²`
    DistanceToAnchor(Point),
}

impl Objective {
    pub fn name(&self) -> &'static str {
        match self {
            Objective::SquaredNorm => "squared-norm",
            Objective::Linear(_) => "linear",
            Objective::DistanceToAnchor(_) => "distance-to-anchor",
        }
    }

    pub fn value(&self, x: &Point) -> Result<f64> {
        self.check_dim(x.dim())?;
        Ok(self.value_slice(x.coords()))
    }

    /// A subgradient at `x`. Every shipped objective is differentiable, so
    /// this is the gradient.
    pub fn subgradient(&self, x: &Point) -> Result<Point> {
        self.check_dim(x.dim())?;
        let g = self.subgradient_slice(x.coords());
        Point::new(g)
    }

    pub(crate) fn check_dim(&self, n: usize) -> Result<()> {
        match self {
            Objective::SquaredNorm => Ok(()),
            Objective::Linear(v) | Objective::DistanceToAnchor(v) => v.check_dim(n).map_err(|_| {
                Error::DimensionMismatch { expected: n, found: v.dim() }
            }),
        }
    }

    pub(crate) fn value_slice(&self, x: &[f64]) -> f64 {
        match self {
            Objective::SquaredNorm => point::norm_sq(x),
            Objective::Linear(c) => point::dot(c.coords(), x),
            Objective::DistanceToAnchor(a) => point::distance_sq(x, a.coords()),
        }
    }

    pub(crate) fn subgradient_slice(&self, x: &[f64]) -> Vec<f64> {
        match self {
            Objective::SquaredNorm => x.iter().map(|v| 2.0 * v).collect(),
            Objective::Linear(c) => c.coords().to_vec(),
            Objective::DistanceToAnchor(a) => x.iter().zip(a.coords()).map(|(v, ai)| 2.0 * (v - ai)).collect(),
        }
    }
}

/// `v = −g / max(1, ‖g‖)`, so `‖v‖ ≤ 1`.
pub fn descent_direction(g: &[f64]) -> Vec<f64> {
    let scale = point::norm(g).max(1.0);
    g.iter().map(|gi| -gi / scale).collect()
}
