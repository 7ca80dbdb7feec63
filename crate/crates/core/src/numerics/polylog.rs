//! The trilogarithm `Li₃(z) = Σ_{k≥1} zᵏ/k³` on the real segment `[-1, 1]`.
//!
//! For `|z| ≤ 0.75` the defining power series is summed directly until the
//! next term falls below `1e-16` of the partial sum. Closer to `z = 1` the
//! series converges like `k⁻³` and would need ~10⁷ terms, so there the
//! expansion in `μ = ln z` about `z = 1` is used instead; `z < -0.75` is
//! mapped onto positive arguments with the duplication identity
//! `Li₃(z) + Li₃(-z) = Li₃(z²)/4`.

#![allow(clippy::excessive_precision)]

use crate::{Error, Result};

/// Apéry's constant ζ(3).
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

const ZETA2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;

const SERIES_RADIUS: f64 = 0.75;

pub fn li3(z: f64) -> Result<f64> {
    if !z.is_finite() || z.abs() > 1.0 {
        return Err(Error::Domain(format!("Li3 argument {z} outside [-1, 1]")));
    }
    Ok(li3_unchecked(z))
}

fn li3_unchecked(z: f64) -> f64 {
    if z.abs() <= SERIES_RADIUS {
        li3_series(z)
    } else if z > 0.0 {
        li3_near_one(z)
    } else {
        0.25 * li3_unchecked(z * z) - li3_near_one(-z)
    }
}

fn li3_series(z: f64) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    let mut sum = 0.0;
    let mut power = 1.0;
    for k in 1..=200u32 {
        power *= z;
        let term = power / (k as f64).powi(3);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// `Li₃(e^μ)` for `μ = ln z ∈ [ln 0.75, 0]`.
fn li3_near_one(z: f64) -> f64 {
    if z == 1.0 {
        return ZETA3;
    }
    let mu = z.ln();
    // ζ(3-k)/k! for k = 3, 4, 6, 8, 10, 12, 14 (ζ vanishes at the even
    // negative integers, so odd k ≥ 5 drop out).
    const COEFFS: [(i32, f64); 7] = [
        (3, -0.5 / 6.0),
        (4, -1.0 / 12.0 / 24.0),
        (6, 1.0 / 120.0 / 720.0),
        (8, -1.0 / 252.0 / 40_320.0),
        (10, 1.0 / 240.0 / 3_628_800.0),
        (12, -1.0 / 132.0 / 479_001_600.0),
        (14, 691.0 / 32_760.0 / 87_178_291_200.0),
    ];
    let mut tail = 0.0;
    for &(k, c) in COEFFS.iter().rev() {
        tail += c * mu.powi(k);
    }
    ZETA3 + ZETA2 * mu + 0.5 * mu * mu * (1.5 - (-mu).ln()) + tail
}
