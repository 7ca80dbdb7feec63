//! Kramers–Kronig construction of `ε(iξ)` from a tabulated absorption
//! spectrum:
//!
//! `ε(iξ) = 1 + (2/π) ∫₀^∞ x ε″(x) / (x² + ξ²) dx`.
//!
//! Between samples `ε″` is interpolated linearly in log-log space (linearly
//! in log-frequency when an endpoint is zero) and each panel is integrated
//! in `ln x` with a fixed Gauss–Legendre rule. Below the first sample `ε″`
//! is taken as zero; above the last it decays as `x^(-p)` and that tail is
//! integrated separately.

use serde::{Deserialize, Serialize};

use crate::numerics::quadrature::{gauss_legendre_8, integrate, Tolerance};
use crate::{Error, Result};

pub const DEFAULT_TAIL_EXPONENT: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbsorptionTable {
    /// `(x [rad/s], ε″(x))`, strictly increasing in `x`.
    samples: Vec<(f64, f64)>,
    tail_exponent: f64,
}

impl AbsorptionTable {
    pub fn new(samples: Vec<(f64, f64)>, tail_exponent: f64) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "absorption table needs at least 2 samples, got {}",
                samples.len()
            )));
        }
        if !(tail_exponent > 0.0 && tail_exponent.is_finite()) {
            return Err(Error::Invariant(format!(
                "tail exponent must be positive, got {tail_exponent}"
            )));
        }
        for (i, &(x, e)) in samples.iter().enumerate() {
            if !(x > 0.0 && x.is_finite()) {
                return Err(Error::Invariant(format!(
                    "sample {i}: frequency must be positive, got {x}"
                )));
            }
            if !(e >= 0.0 && e.is_finite()) {
                return Err(Error::Invariant(format!(
                    "sample {i}: eps_imag must be non-negative (passivity), got {e}"
                )));
            }
            if i > 0 && x <= samples[i - 1].0 {
                return Err(Error::Invariant(format!(
                    "sample {i}: frequencies must be strictly increasing ({} after {})",
                    x,
                    samples[i - 1].0
                )));
            }
        }
        Ok(Self {
            samples,
            tail_exponent,
        })
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn tail_exponent(&self) -> f64 {
        self.tail_exponent
    }

    pub fn kk_transform(&self, xi: f64) -> Result<f64> {
        if !(xi >= 0.0) || !xi.is_finite() {
            return Err(Error::Domain(format!(
                "imaginary frequency must be finite and non-negative, got {xi}"
            )));
        }
        Ok(self.kk_transform_unchecked(xi))
    }

    pub(crate) fn kk_transform_unchecked(&self, xi: f64) -> f64 {
        let (nodes, weights) = gauss_legendre_8();
        let xi2 = xi * xi;
        let mut body = 0.0;
        for w in self.samples.windows(2) {
            let (x0, e0) = w[0];
            let (x1, e1) = w[1];
            if e0 == 0.0 && e1 == 0.0 {
                continue;
            }
            let s0 = x0.ln();
            let s1 = x1.ln();
            let half = 0.5 * (s1 - s0);
            let mid = 0.5 * (s1 + s0);
            let loglog = e0 > 0.0 && e1 > 0.0;
            let (l0, l1) = if loglog {
                (e0.ln(), e1.ln())
            } else {
                (0.0, 0.0)
            };
            let mut panel = 0.0;
            for (t, wt) in nodes.iter().zip(weights) {
                let s = mid + half * t;
                let frac = (s - s0) / (s1 - s0);
                let eps_imag = if loglog {
                    (l0 + frac * (l1 - l0)).exp()
                } else {
                    e0 + frac * (e1 - e0)
                };
                let x = s.exp();
                let x2 = x * x;
                panel += wt * x2 * eps_imag / (x2 + xi2);
            }
            body += half * panel;
        }
        let &(x_last, e_last) = self.samples.last().expect("validated non-empty");
        let tail = e_last * tail_integral(self.tail_exponent, xi / x_last);
        1.0 + std::f64::consts::FRAC_2_PI * (body + tail)
    }
}

/// `∫₀¹ y^(p-1) / (1 + a² y²) dy`, the power-law tail in the variable
/// `y = x_last / x`.
fn tail_integral(p: f64, a: f64) -> f64 {
    let a2 = a * a;
    if a <= 0.5 {
        // Σ (-a²)ᵏ / (p + 2k); |a²| ≤ 1/4 so 30 terms reach f64 precision.
        let mut sum = 0.0;
        let mut power = 1.0;
        for k in 0..40 {
            let term = power / (p + 2.0 * k as f64);
            sum += term;
            if term.abs() < 1e-17 * sum.abs() {
                break;
            }
            power *= -a2;
        }
        sum
    } else {
        // v = y^p removes the endpoint singularity for p < 1.
        let q = 2.0 / p;
        let tol = Tolerance {
            abs: 0.0,
            rel: 1e-12,
            max_subdivisions: 200,
        };
        let r = match integrate(|v: f64| 1.0 / (1.0 + a2 * v.powf(q)), &[0.0, 0.5, 1.0], tol) {
            Ok(r) => r,
            Err(partial) => partial.0,
        };
        r.value / p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat_table(value: f64) -> AbsorptionTable {
        AbsorptionTable::new(vec![(1e13, value), (1e15, value), (1e17, value)], 3.0).unwrap()
    }

    #[test]
    fn zero_absorption_is_vacuum() {
        let t = flat_table(0.0);
        for xi in [0.0, 1e12, 1e16, 1e19] {
            assert_eq!(t.kk_transform(xi).unwrap(), 1.0);
        }
    }

    #[test]
    fn fewer_than_two_samples_rejected() {
        let err = AbsorptionTable::new(vec![(1e15, 1.0)], 3.0).unwrap_err();
        assert_eq!(err.code(), "INVALID_INPUT");
    }

    #[test]
    fn invariant_violations() {
        assert_eq!(
            AbsorptionTable::new(vec![(1e15, 1.0), (1e14, 1.0)], 3.0)
                .unwrap_err()
                .code(),
            "INVARIANT"
        );
        assert_eq!(
            AbsorptionTable::new(vec![(1e14, -0.1), (1e15, 1.0)], 3.0)
                .unwrap_err()
                .code(),
            "INVARIANT"
        );
        assert_eq!(
            AbsorptionTable::new(vec![(1e14, 0.1), (1e15, 1.0)], 0.0)
                .unwrap_err()
                .code(),
            "INVARIANT"
        );
    }

    #[test]
    fn constant_panel_static_limit() {
        // ε″ ≡ c on [x0, x1], tail c·(x1/x)^p: ε(0) - 1 = (2/π) c (ln(x1/x0) + 1/p).
        let c = 0.7;
        let t = AbsorptionTable::new(vec![(1e14, c), (1e16, c)], 2.0).unwrap();
        let want = 1.0 + std::f64::consts::FRAC_2_PI * c * ((100.0f64).ln() + 0.5);
        assert!((t.kk_transform(0.0).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn tail_integral_branches_agree() {
        for p in [0.5, 1.0, 3.0, 4.5] {
            // closed forms at p = 1 and p = 3
            let a: f64 = 0.5;
            let series = tail_integral(p, a);
            let a_hi = a + 1e-9;
            let quad = tail_integral(p, a_hi);
            assert!((series - quad).abs() < 1e-8, "p={p}: {series} vs {quad}");
        }
        let a: f64 = 2.0;
        assert!((tail_integral(1.0, a) - a.atan() / a).abs() < 1e-12);
        assert!((tail_integral(3.0, a) - (1.0 - a.atan() / a) / (a * a)).abs() < 1e-12);
    }

    #[test]
    fn monotone_in_frequency() {
        let t = AbsorptionTable::new(
            vec![
                (1e13, 0.1),
                (1e14, 2.0),
                (1e15, 0.0),
                (1e16, 3.0),
                (1e17, 0.5),
            ],
            3.0,
        )
        .unwrap();
        let mut prev = f64::INFINITY;
        for k in 0..100 {
            let xi = 10f64.powf(11.0 + 8.0 * k as f64 / 99.0);
            let e = t.kk_transform(xi).unwrap();
            assert!(e <= prev && e >= 1.0);
            prev = e;
        }
    }
}
