use crate::error::{Error, Result};

/// Smallest integer strictly greater than `(M + M₀)² / (γΔ)`.
///
/// A quotient within `1e-9` (relative) of an integer is treated as that
/// integer, so decimal inputs such as `γ = 0.01, Δ = 0.1` are not thrown off
/// by binary rounding of the product.
pub fn k0_bound(m: f64, m0: f64, delta: f64, gamma: f64) -> Result<u64> {
    for (name, v) in [("M", m), ("M0", m0), ("Δ", delta), ("γ", gamma)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::InvalidArgument(format!("{name}={v} must be finite and > 0")));
        }
    }
    let quotient = (m + m0).powi(2) / (gamma * delta);
    if !quotient.is_finite() || quotient >= 2f64.powi(53) {
        return Err(Error::InvalidArgument(format!("k0 bound {quotient:e} is not representable")));
    }
    let nearest = quotient.round();
    let floor = if (quotient - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest
    } else {
        quotient.floor()
    };
    Ok(floor as u64 + 1)
}

/// Largest `γ` with `q̄ √γ ≤ δ`, i.e. `(δ/q̄)²` rounded down until the
/// inequality holds in floating point.
pub fn gamma_for_delta(qbar: usize, delta: f64) -> Result<f64> {
    if qbar == 0 {
        return Err(Error::InvalidArgument("q̄ must be ≥ 1".into()));
    }
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::InvalidArgument(format!("δ={delta} must be finite and > 0")));
    }
    let q = qbar as f64;
    let mut gamma = (delta / q).powi(2);
    while gamma > 0.0 && q * gamma.sqrt() > delta {
        gamma = gamma.next_down();
    }
    if gamma <= 0.0 {
        return Err(Error::InvalidArgument(format!("δ={delta} too small for q̄={qbar}")));
    }
    Ok(gamma)
}
