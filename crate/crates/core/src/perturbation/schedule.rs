use crate::error::{Error, Result};
use crate::point::{self, Point};
use crate::rng::{self, Rng};

use super::objective::{descent_direction, Objective};

/// Summable step sizes `β_k ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BetaRule {
    /// `β_k = β₀ rᵏ`, `0 < r < 1`.
    Geometric { beta0: f64, ratio: f64 },
    /// `β_k = β₀ / (k+1)ᵖ`, `p > 1`.
    PowerLaw { beta0: f64, exponent: f64 },
    Zero,
}

impl BetaRule {
    pub fn geometric(beta0: f64, ratio: f64) -> Result<Self> {
        check_beta0(beta0)?;
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::InvalidArgument(format!("ratio={ratio} must lie in (0, 1)")));
        }
        Ok(BetaRule::Geometric { beta0, ratio })
    }

    pub fn power_law(beta0: f64, exponent: f64) -> Result<Self> {
        check_beta0(beta0)?;
        if !(exponent.is_finite() && exponent > 1.0) {
            return Err(Error::InvalidArgument(format!(
                "exponent={exponent} must be > 1 for a summable power law"
            )));
        }
        Ok(BetaRule::PowerLaw { beta0, exponent })
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            BetaRule::Geometric { beta0, ratio } => Self::geometric(beta0, ratio).map(drop),
            BetaRule::PowerLaw { beta0, exponent } => Self::power_law(beta0, exponent).map(drop),
            BetaRule::Zero => Ok(()),
        }
    }

    pub fn beta(&self, k: usize) -> f64 {
        match *self {
            BetaRule::Geometric { beta0, ratio } => beta0 * ratio.powi(k.min(i32::MAX as usize) as i32),
            BetaRule::PowerLaw { beta0, exponent } => beta0 / ((k + 1) as f64).powf(exponent),
            BetaRule::Zero => 0.0,
        }
    }

    /// `Σ_{k≥0} β_k` in closed form. The power law uses the Riemann zeta
    /// value `β₀ ζ(p)`.
    pub fn series_limit(&self) -> f64 {
        match *self {
            BetaRule::Geometric { beta0, ratio } => beta0 / (1.0 - ratio),
            BetaRule::PowerLaw { beta0, exponent } => beta0 * zeta(exponent),
            BetaRule::Zero => 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        match *self {
            BetaRule::Zero => true,
            BetaRule::Geometric { beta0, .. } | BetaRule::PowerLaw { beta0, .. } => beta0 == 0.0,
        }
    }
}

fn check_beta0(beta0: f64) -> Result<()> {
    if !(beta0.is_finite() && beta0 >= 0.0) {
        return Err(Error::InvalidArgument(format!("beta0={beta0} must be finite and ≥ 0")));
    }
    Ok(())
}

/// Riemann zeta for real `s > 1`: direct sum of the first terms plus an
/// Euler–Maclaurin tail.
fn zeta(s: f64) -> f64 {
    const N: usize = 64;
    let n = N as f64;
    let head: f64 = (1..N).map(|k| (k as f64).powf(-s)).sum();
    let t0 = n.powf(-s);
    // ∫_N^∞ x^{-s} dx + f(N)/2 − f'(N)/12 + f'''(N)/720
    let tail = n.powf(1.0 - s) / (s - 1.0) + t0 / 2.0 + s * t0 / (12.0 * n)
        - s * (s + 1.0) * (s + 2.0) * t0 / (720.0 * n.powi(3));
    head + tail
}

/// Where the perturbation directions `v^k` come from.
#[derive(Clone, Debug, PartialEq)]
pub enum DirectionSource {
    FixedVector(Point),
    /// Uniform on the unit sphere, from a seeded ChaCha8 stream.
    SeededRandomUnit { seed: u64 },
    /// `−g/max(1,‖g‖)` with `g` a subgradient of the objective at `x^k`.
    SubgradientObjective(Objective),
}

/// `β_k v^k` with `Σ β_k < ∞` and `‖v^k‖ ≤ V`.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationSchedule {
    beta: BetaRule,
    direction: DirectionSource,
    v_bound: f64,
}

impl PerturbationSchedule {
    pub fn new(beta: BetaRule, direction: DirectionSource) -> Result<Self> {
        beta.validate()?;
        let v_bound = match &direction {
            DirectionSource::FixedVector(v) => v.norm(),
            DirectionSource::SeededRandomUnit { .. } | DirectionSource::SubgradientObjective(_) => 1.0,
        };
        Ok(PerturbationSchedule { beta, direction, v_bound })
    }

    pub fn zero() -> Self {
        PerturbationSchedule { beta: BetaRule::Zero, direction: DirectionSource::SeededRandomUnit { seed: 0 }, v_bound: 1.0 }
    }

    pub fn beta_rule(&self) -> &BetaRule {
        &self.beta
    }

    pub fn direction_source(&self) -> &DirectionSource {
        &self.direction
    }

    /// The guaranteed bound `V` on `‖v^k‖`.
    pub fn v_bound(&self) -> f64 {
        self.v_bound
    }

    pub(crate) fn start(&self, dim: usize) -> Result<DirectionStream<'_>> {
        match &self.direction {
            DirectionSource::FixedVector(v) => v.check_dim(dim)?,
            DirectionSource::SubgradientObjective(obj) => obj.check_dim(dim)?,
            DirectionSource::SeededRandomUnit { .. } => {}
        }
        let rng = match self.direction {
            DirectionSource::SeededRandomUnit { seed } => Some(rng::seeded(seed, 0)),
            _ => None,
        };
        Ok(DirectionStream { schedule: self, rng, dim })
    }
}

/// Per-run direction generator. Owns its random state; never shared between runs.
pub(crate) struct DirectionStream<'a> {
    schedule: &'a PerturbationSchedule,
    rng: Option<Rng>,
    dim: usize,
}

impl DirectionStream<'_> {
    pub fn next(&mut self, step: usize, x: &[f64]) -> Result<Vec<f64>> {
        let v = match &self.schedule.direction {
            DirectionSource::FixedVector(v) => v.coords().to_vec(),
            DirectionSource::SeededRandomUnit { .. } => {
                rng::unit_vector(self.rng.as_mut().expect("seeded source has a generator"), self.dim)
            }
            DirectionSource::SubgradientObjective(obj) => {
                let g = obj.subgradient_slice(x);
                if g.iter().any(|c| !c.is_finite()) {
                    return Err(Error::Direction { iteration: step + 1, reason: "subgradient is not finite".into() });
                }
                descent_direction(&g)
            }
        };
        debug_assert!(point::norm(&v) <= self.schedule.v_bound + 1e-12);
        Ok(v)
    }
}
