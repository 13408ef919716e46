//! Closed convex sets with exact metric projections.
//!
//! Four shapes are supported, each with a closed-form projection:
//!
//! | shape      | set                          | projection                               |
//! |------------|------------------------------|------------------------------------------|
//! | hyperplane | `{y : ⟨a,y⟩ = b}`            | `x − (⟨a,x⟩ − b)/‖a‖² · a`               |
//! | half-space | `{y : ⟨a,y⟩ ≤ b}`            | `x − max(0, ⟨a,x⟩ − b)/‖a‖² · a`         |
//! | ball       | `{y : ‖y − c‖ ≤ r}`          | `c + r (x − c)/‖x − c‖` outside, else `x`|
//! | box        | `{y : l ≤ y ≤ u}`            | coordinatewise clamp                     |
//!
//! Radius zero and `l = u` give singleton sets and are accepted.

use crate::error::{Error, Result};
use crate::point::{self, Point};

/// Absolute plus relative (in `‖x‖`) membership tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn bound_at(&self, x: &[f64]) -> f64 {
        self.abs + self.rel * point::norm(x)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-9, rel: 1e-9 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    Hyperplane { normal: Point, offset: f64 },
    Halfspace { normal: Point, offset: f64 },
    Ball { center: Point, radius: f64 },
    Box { lower: Point, upper: Point },
}

/// A nonempty closed convex set. Construction enforces the shape invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexSet {
    shape: Shape,
    // ‖a‖² for the hyperplane and half-space shapes.
    normal_sq: f64,
}

impl ConvexSet {
    pub fn hyperplane(normal: Point, offset: f64) -> Result<Self> {
        let normal_sq = checked_normal(&normal, offset)?;
        Ok(ConvexSet { shape: Shape::Hyperplane { normal, offset }, normal_sq })
    }

    /// `{y : ⟨normal, y⟩ ≤ offset}`.
    pub fn halfspace(normal: Point, offset: f64) -> Result<Self> {
        let normal_sq = checked_normal(&normal, offset)?;
        Ok(ConvexSet { shape: Shape::Halfspace { normal, offset }, normal_sq })
    }

    pub fn ball(center: Point, radius: f64) -> Result<Self> {
        if !radius.is_finite() {
            return Err(Error::NonFinite("ball radius".into()));
        }
        if radius < 0.0 {
            return Err(Error::InvalidSet(format!("ball radius {radius} is negative")));
        }
        Ok(ConvexSet { shape: Shape::Ball { center, radius }, normal_sq: 0.0 })
    }

    pub fn bounding_box(lower: Point, upper: Point) -> Result<Self> {
        if lower.dim() != upper.dim() {
            return Err(Error::DimensionMismatch { expected: lower.dim(), found: upper.dim() });
        }
        if let Some(i) = lower.coords().iter().zip(upper.coords()).position(|(l, u)| l > u) {
            return Err(Error::InvalidSet(format!("box bounds inverted in coordinate {i}")));
        }
        Ok(ConvexSet { shape: Shape::Box { lower, upper }, normal_sq: 0.0 })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        match &self.shape {
            Shape::Hyperplane { normal, .. } | Shape::Halfspace { normal, .. } => normal.dim(),
            Shape::Ball { center, .. } => center.dim(),
            Shape::Box { lower, .. } => lower.dim(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.shape {
            Shape::Hyperplane { .. } => "hyperplane",
            Shape::Halfspace { .. } => "halfspace",
            Shape::Ball { .. } => "ball",
            Shape::Box { .. } => "box",
        }
    }

    pub fn project(&self, x: &Point) -> Result<Point> {
        x.check_dim(self.dim())?;
        let mut out = vec![0.0; x.dim()];
        self.project_into(x.coords(), &mut out);
        Ok(Point::from_vec_unchecked(out))
    }

    /// `‖x − P(x)‖`.
    pub fn distance(&self, x: &Point) -> Result<f64> {
        x.check_dim(self.dim())?;
        Ok(self.distance_slice(x.coords()))
    }

    pub fn contains(&self, x: &Point, tol: f64) -> Result<bool> {
        if !tol.is_finite() || tol < 0.0 {
            return Err(Error::InvalidArgument(format!("tolerance {tol} must be finite and ≥ 0")));
        }
        Ok(self.distance(x)? <= tol)
    }

    /// Membership under the default absolute-plus-relative tolerance.
    pub fn is_member(&self, x: &Point) -> Result<bool> {
        let tol = Tolerance::default().bound_at(x.coords());
        self.contains(x, tol)
    }

    /// Writes `P(x)` into `out`. Both slices must have the set's dimension.
    pub(crate) fn project_into(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim());
        debug_assert_eq!(out.len(), self.dim());
        match &self.shape {
            Shape::Hyperplane { normal, offset } => {
                let a = normal.coords();
                let scale = (point::dot(a, x) - offset) / self.normal_sq;
                for ((o, xi), ai) in out.iter_mut().zip(x).zip(a) {
                    *o = xi - scale * ai;
                }
            }
            Shape::Halfspace { normal, offset } => {
                let a = normal.coords();
                let excess = point::dot(a, x) - offset;
                if excess <= 0.0 {
                    out.copy_from_slice(x);
                } else {
                    let scale = excess / self.normal_sq;
                    for ((o, xi), ai) in out.iter_mut().zip(x).zip(a) {
                        *o = xi - scale * ai;
                    }
                }
            }
            Shape::Ball { center, radius } => {
                let c = center.coords();
                let dist = point::distance_sq(x, c).sqrt();
                if dist <= *radius {
                    out.copy_from_slice(x);
                } else {
                    let scale = radius / dist;
                    for ((o, xi), ci) in out.iter_mut().zip(x).zip(c) {
                        *o = ci + scale * (xi - ci);
                    }
                }
            }
            Shape::Box { lower, upper } => {
                for (((o, xi), lo), hi) in out.iter_mut().zip(x).zip(lower.coords()).zip(upper.coords()) {
                    *o = xi.clamp(*lo, *hi);
                }
            }
        }
    }

    pub(crate) fn distance_slice(&self, x: &[f64]) -> f64 {
        let mut p = vec![0.0; x.len()];
        self.project_into(x, &mut p);
        point::distance_sq(x, &p).sqrt()
    }
}

fn checked_normal(normal: &Point, offset: f64) -> Result<f64> {
    if !offset.is_finite() {
        return Err(Error::NonFinite("offset".into()));
    }
    let normal_sq = point::norm_sq(normal.coords());
    if normal_sq <= 0.0 || !normal_sq.is_finite() {
        return Err(Error::InvalidSet("normal vector must have positive finite norm".into()));
    }
    Ok(normal_sq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[f64]) -> Point {
        Point::new(v.to_vec()).unwrap()
    }

    #[test]
    fn halfspace_projection_drops_normal_excess() {
        let h = ConvexSet::halfspace(p(&[1.0, 0.0]), 0.0).unwrap();
        assert_eq!(h.project(&p(&[2.0, 3.0])).unwrap(), p(&[0.0, 3.0]));
        assert_eq!(h.distance(&p(&[2.0, 3.0])).unwrap(), 2.0);
    }

    #[test]
    fn ball_interior_is_fixed_and_exterior_distance() {
        let b = ConvexSet::ball(p(&[0.0, 0.0]), 1.0).unwrap();
        assert_eq!(b.project(&p(&[0.0, 0.0])).unwrap(), p(&[0.0, 0.0]));
        assert_eq!(b.distance(&p(&[3.0, 4.0])).unwrap(), 4.0);
    }

    #[test]
    fn box_clamps() {
        let b = ConvexSet::bounding_box(p(&[0.0, 0.0]), p(&[1.0, 1.0])).unwrap();
        assert_eq!(b.project(&p(&[2.0, -1.0])).unwrap(), p(&[1.0, 0.0]));
    }

    #[test]
    fn hyperplane_projection() {
        let h = ConvexSet::hyperplane(p(&[3.0, 4.0]), 5.0).unwrap();
        let q = h.project(&p(&[0.0, 0.0])).unwrap();
        assert!((q.coords()[0] - 0.6).abs() < 1e-15);
        assert!((q.coords()[1] - 0.8).abs() < 1e-15);
    }

    #[test]
    fn contains_examples() {
        let b = ConvexSet::bounding_box(p(&[0.0, 0.0]), p(&[1.0, 1.0])).unwrap();
        assert!(b.contains(&p(&[0.5, 0.5]), 0.0).unwrap());
        let h = ConvexSet::hyperplane(p(&[1.0, 0.0]), 1.0).unwrap();
        assert!(h.contains(&p(&[1.0 + 1e-7, 0.0]), 1e-6).unwrap());
        let ball = ConvexSet::ball(p(&[0.0, 0.0]), 1.0).unwrap();
        assert!(!ball.contains(&p(&[2.0, 0.0]), 0.5).unwrap());
        assert!(ball.contains(&p(&[2.0, 0.0]), -1.0).is_err());
    }

    #[test]
    fn singletons_are_allowed() {
        let b = ConvexSet::ball(p(&[1.0, 2.0]), 0.0).unwrap();
        assert_eq!(b.project(&p(&[5.0, -3.0])).unwrap(), p(&[1.0, 2.0]));
        let bx = ConvexSet::bounding_box(p(&[1.0, 2.0]), p(&[1.0, 2.0])).unwrap();
        assert_eq!(bx.project(&p(&[5.0, -3.0])).unwrap(), p(&[1.0, 2.0]));
    }

    #[test]
    fn invariant_violations_rejected() {
        assert!(ConvexSet::halfspace(p(&[0.0, 0.0]), 1.0).is_err());
        assert!(ConvexSet::hyperplane(p(&[1.0]), f64::INFINITY).is_err());
        assert!(ConvexSet::ball(p(&[0.0]), -1.0).is_err());
        assert!(ConvexSet::bounding_box(p(&[1.0]), p(&[0.0])).is_err());
        assert!(ConvexSet::bounding_box(p(&[1.0]), p(&[0.0, 1.0])).is_err());
        assert!(Point::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let h = ConvexSet::halfspace(p(&[1.0, 0.0]), 0.0).unwrap();
        assert!(matches!(
            h.project(&p(&[1.0, 2.0, 3.0])),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
        assert!(h.distance(&p(&[1.0])).is_err());
    }
}
