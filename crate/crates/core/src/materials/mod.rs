//! Dielectric response on the imaginary frequency axis, `ε(iξ)`.
//!
//! Every model here is real, at least 1 and non-increasing in `ξ`, which is
//! what causality and passivity require of a permittivity continued to the
//! positive imaginary axis.

mod kk;
mod parse;
pub mod shipped;

pub use kk::AbsorptionTable;
pub use parse::{load_material, parse_material};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DrudeTerm {
    /// rad/s
    pub plasma_frequency: f64,
    /// rad/s
    pub damping: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LorentzTerm {
    pub strength: f64,
    /// rad/s
    pub resonance_frequency: f64,
    /// rad/s
    pub damping: f64,
}

/// Sum of Drude and Lorentz oscillators:
///
/// `ε(iξ) = 1 + Σ ωp²/(ξ² + γξ) + Σ f·ωr²/(ωr² + ξ² + γξ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscillatorModel {
    drude: Vec<DrudeTerm>,
    lorentz: Vec<LorentzTerm>,
}

impl OscillatorModel {
    /// Validates the parameters. Frequencies must be strictly positive,
    /// dampings and strengths non-negative.
    pub fn new(drude: Vec<DrudeTerm>, lorentz: Vec<LorentzTerm>) -> Result<Self> {
        for (i, t) in drude.iter().enumerate() {
            if !(t.plasma_frequency > 0.0 && t.plasma_frequency.is_finite()) {
                return Err(Error::Invariant(format!(
                    "drude term {i}: plasma frequency must be positive, got {}",
                    t.plasma_frequency
                )));
            }
            if !(t.damping >= 0.0 && t.damping.is_finite()) {
                return Err(Error::Invariant(format!(
                    "drude term {i}: damping must be non-negative, got {}",
                    t.damping
                )));
            }
        }
        for (i, t) in lorentz.iter().enumerate() {
            if !(t.strength >= 0.0 && t.strength.is_finite()) {
                return Err(Error::Invariant(format!(
                    "lorentz term {i}: strength must be non-negative, got {}",
                    t.strength
                )));
            }
            if !(t.resonance_frequency > 0.0 && t.resonance_frequency.is_finite()) {
                return Err(Error::Invariant(format!(
                    "lorentz term {i}: resonance frequency must be positive, got {}",
                    t.resonance_frequency
                )));
            }
            if !(t.damping >= 0.0 && t.damping.is_finite()) {
                return Err(Error::Invariant(format!(
                    "lorentz term {i}: damping must be non-negative, got {}",
                    t.damping
                )));
            }
        }
        Ok(Self { drude, lorentz })
    }

    pub fn drude_terms(&self) -> &[DrudeTerm] {
        &self.drude
    }

    pub fn lorentz_terms(&self) -> &[LorentzTerm] {
        &self.lorentz
    }

    /// `ε(iξ)`. Returns `+∞` at `ξ = 0` when a Drude term is present.
    pub fn eval(&self, xi: f64) -> f64 {
        let xi2 = xi * xi;
        let mut eps = 1.0;
        for t in &self.drude {
            let denom = xi2 + t.damping * xi;
            if denom == 0.0 {
                return f64::INFINITY;
            }
            eps += t.plasma_frequency * t.plasma_frequency / denom;
        }
        for t in &self.lorentz {
            let wr2 = t.resonance_frequency * t.resonance_frequency;
            eps += t.strength * wr2 / (wr2 + xi2 + t.damping * xi);
        }
        eps
    }

    /// Imaginary part `ε″(ω)` of the same oscillators on the real axis.
    /// Useful for building synthetic absorption tables.
    pub fn eps_imag_real_axis(&self, omega: f64) -> f64 {
        let mut im = 0.0;
        for t in &self.drude {
            // ωp² γ / (ω (ω² + γ²))
            let wp2 = t.plasma_frequency * t.plasma_frequency;
            im += wp2 * t.damping / (omega * (omega * omega + t.damping * t.damping));
        }
        for t in &self.lorentz {
            let wr2 = t.resonance_frequency * t.resonance_frequency;
            let a = wr2 - omega * omega;
            let b = t.damping * omega;
            im += t.strength * wr2 * b / (a * a + b * b);
        }
        im
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DielectricModel {
    Oscillator(OscillatorModel),
    Tabulated(AbsorptionTable),
    Vacuum,
    /// Ideal metal; only legal as a half-space.
    PerfectConductor,
}

impl DielectricModel {
    pub fn is_perfect_conductor(&self) -> bool {
        matches!(self, DielectricModel::PerfectConductor)
    }

    /// `ε(iξ)` for `ξ ≥ 0`. A perfect conductor evaluates to `+∞`.
    pub fn eval_eps(&self, xi: f64) -> Result<f64> {
        if !(xi >= 0.0) || !xi.is_finite() {
            return Err(Error::Domain(format!(
                "imaginary frequency must be finite and non-negative, got {xi}"
            )));
        }
        Ok(match self {
            DielectricModel::Oscillator(m) => m.eval(xi),
            DielectricModel::Tabulated(t) => t.kk_transform_unchecked(xi),
            DielectricModel::Vacuum => 1.0,
            DielectricModel::PerfectConductor => f64::INFINITY,
        })
    }
}

/// A named dielectric model, as loaded from a material file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Material {
    pub name: String,
    pub model: DielectricModel,
}

impl Material {
    pub fn new(name: impl Into<String>, model: DielectricModel) -> Self {
        Self {
            name: name.into(),
            model,
        }
    }

    pub fn eval_eps(&self, xi: f64) -> Result<f64> {
        self.model.eval_eps(xi)
    }
}
