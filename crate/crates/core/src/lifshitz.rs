//! Lifshitz free energy per unit area between two half-spaces (media 1 and
//! 3) across a gap (medium 2), summed over Matsubara frequencies
//! `ξₙ = 2πn k_B T/ħ` with the `n = 0` term half-weighted.
//!
//! Each retarded term is a radial wave-vector integral
//!
//! `g(ξₙ) = (k_B T / 2π) ∫₀^∞ q ln(1 - r₁ r₃ e^{-2γ₂d}) dq`,
//!
//! evaluated in `u = 2γ₂d`, where `q dq = u du / 4d²` and the integrand
//! decays like `e^{-u}` independently of `d`. The nonretarded term uses
//! `u = 2qd` and the `q`-independent reflection factors, which gives the
//! closed form `-(k_B T / 8πd²) Li₃(Δ₁Δ₃)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::{matsubara_frequency, BOLTZMANN, DEFAULT_TEMPERATURE, SPEED_OF_LIGHT};
use crate::materials::DielectricModel;
use crate::numerics::polylog::li3;
use crate::numerics::quadrature::{integrate, Tolerance};
use crate::numerics::summation::NeumaierSum;
use crate::{Error, Result};

/// Number of Matsubara terms evaluated per parallel batch.
const BATCH: usize = 64;

/// Integrand magnitude, relative to its peak, below which the `u` range is cut.
const CUTOFF_RATIO: f64 = 1e-16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemConfig {
    material_1: DielectricModel,
    material_2: DielectricModel,
    material_3: DielectricModel,
    temperature: f64,
}

impl SystemConfig {
    /// Half-space `material_1`, gap `material_2`, half-space `material_3`.
    pub fn new(
        material_1: DielectricModel,
        material_2: DielectricModel,
        material_3: DielectricModel,
        temperature: f64,
    ) -> Result<Self> {
        if !(temperature > 0.0 && temperature.is_finite()) {
            return Err(Error::Invariant(format!(
                "temperature must be positive and finite, got {temperature}"
            )));
        }
        if material_2.is_perfect_conductor() {
            return Err(Error::Invariant(
                "a perfect conductor cannot be the gap medium".into(),
            ));
        }
        Ok(Self {
            material_1,
            material_2,
            material_3,
            temperature,
        })
    }

    /// Same as [`SystemConfig::new`] at 300 K.
    pub fn at_room_temperature(
        material_1: DielectricModel,
        material_2: DielectricModel,
        material_3: DielectricModel,
    ) -> Result<Self> {
        Self::new(material_1, material_2, material_3, DEFAULT_TEMPERATURE)
    }

    pub fn material_1(&self) -> &DielectricModel {
        &self.material_1
    }

    pub fn material_2(&self) -> &DielectricModel {
        &self.material_2
    }

    pub fn material_3(&self) -> &DielectricModel {
        &self.material_3
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// `1/β = k_B T` in J.
    pub fn thermal_energy(&self) -> f64 {
        BOLTZMANN * self.temperature
    }

    pub fn matsubara_frequency(&self, n: usize) -> f64 {
        matsubara_frequency(n, self.temperature)
    }

    /// The configuration with the two half-spaces exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            material_1: self.material_3.clone(),
            material_2: self.material_2.clone(),
            material_3: self.material_1.clone(),
            temperature: self.temperature,
        }
    }

    fn response(&self, n: usize) -> Result<Response> {
        let xi = self.matsubara_frequency(n);
        let mut e1 = self.material_1.eval_eps(xi)?;
        let mut e2 = self.material_2.eval_eps(xi)?;
        let mut e3 = self.material_3.eval_eps(xi)?;
        if n == 0 && e2.is_infinite() {
            // Conducting gap medium: take the static limit of the ratios.
            const PROBE: f64 = 1e-9;
            if e1.is_infinite() && !self.material_1.is_perfect_conductor() {
                e1 = self.material_1.eval_eps(PROBE)?;
            }
            if e3.is_infinite() && !self.material_3.is_perfect_conductor() {
                e3 = self.material_3.eval_eps(PROBE)?;
            }
            if e1.is_finite() || e3.is_finite() {
                e2 = self.material_2.eval_eps(PROBE)?;
            }
        }
        Ok(Response {
            n,
            xi,
            xi2_c2: (xi / SPEED_OF_LIGHT).powi(2),
            eps: [e1, e2, e3],
            perfect: [
                self.material_1.is_perfect_conductor(),
                false,
                self.material_3.is_perfect_conductor(),
            ],
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    /// J/m²
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-2) {
            return Err(Error::Invariant(format!(
                "rel_tol must lie in (0, 1e-2], got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol >= 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::Invariant(format!(
                "abs_tol must be non-negative, got {}",
                self.abs_tol
            )));
        }
        if self.max_subdivisions < 8 {
            return Err(Error::Invariant(format!(
                "max_subdivisions must be at least 8, got {}",
                self.max_subdivisions
            )));
        }
        Ok(())
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-7,
            abs_tol: 0.0,
            max_subdivisions: 200,
        }
    }
}

/// Truncation rule for the Matsubara sum: stop once `guard_window`
/// consecutive terms are each below `term_rel_tol` times the running sum of
/// term magnitudes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SumSpec {
    pub term_rel_tol: f64,
    pub guard_window: usize,
    pub hard_max_n: usize,
}

impl SumSpec {
    pub fn new(term_rel_tol: f64, guard_window: usize, hard_max_n: usize) -> Result<Self> {
        let spec = Self {
            term_rel_tol,
            guard_window,
            hard_max_n,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.term_rel_tol > 0.0 && self.term_rel_tol < 1.0) {
            return Err(Error::Invariant(format!(
                "term_rel_tol must lie in (0, 1), got {}",
                self.term_rel_tol
            )));
        }
        if self.guard_window < 3 {
            return Err(Error::Invariant(format!(
                "guard_window must be at least 3, got {}",
                self.guard_window
            )));
        }
        if self.hard_max_n < 100 {
            return Err(Error::Invariant(format!(
                "hard_max_n must be at least 100, got {}",
                self.hard_max_n
            )));
        }
        Ok(())
    }
}

impl Default for SumSpec {
    fn default() -> Self {
        Self {
            term_rel_tol: 1e-9,
            guard_window: 5,
            hard_max_n: 20_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Retarded,
    Nonretarded,
}

/// One Matsubara term, without the half weight on `n = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralTerm {
    pub n: usize,
    /// rad/s
    pub omega_n: f64,
    /// J/m²
    pub g_tm: f64,
    /// J/m²
    pub g_te: f64,
    /// J/m²
    pub quadrature_error: f64,
}

impl SpectralTerm {
    pub fn g_total(&self) -> f64 {
        self.g_tm + self.g_te
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeEnergyResult {
    /// m
    pub separation: f64,
    pub mode: Mode,
    /// J/m²; positive means repulsion.
    pub total: f64,
    pub tm_total: f64,
    pub te_total: f64,
    /// Sum of per-term quadrature error estimates, J/m².
    pub quadrature_error: f64,
    pub n_terms_used: usize,
    pub converged: bool,
}

/// An integral with its error estimate, both in J/m².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermValue {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    Tm,
    Te,
}

/// Permittivities of the three media at one Matsubara frequency.
#[derive(Debug, Clone, Copy)]
struct Response {
    n: usize,
    xi: f64,
    xi2_c2: f64,
    eps: [f64; 3],
    perfect: [bool; 3],
}

/// Reflection factor of one interface as a function of `q²`.
#[derive(Debug, Clone, Copy)]
enum Reflection {
    Constant(f64),
    /// Half-space permittivity and `ε ξ²/c²`.
    Tm {
        eps: f64,
        k2: f64,
    },
    Te {
        eps: f64,
        k2: f64,
    },
}

impl Reflection {
    fn new(resp: &Response, side: usize, pol: Polarization) -> Self {
        let e_side = resp.eps[side];
        let e_gap = resp.eps[1];
        match pol {
            Polarization::Tm if resp.perfect[side] => Reflection::Constant(1.0),
            Polarization::Te if resp.perfect[side] => Reflection::Constant(-1.0),
            Polarization::Tm if resp.n == 0 => Reflection::Constant(static_delta(e_side, e_gap)),
            Polarization::Te if resp.n == 0 => Reflection::Constant(0.0),
            Polarization::Tm => Reflection::Tm {
                eps: e_side,
                k2: e_side * resp.xi2_c2,
            },
            Polarization::Te => Reflection::Te {
                eps: e_side,
                k2: e_side * resp.xi2_c2,
            },
        }
    }

    /// Evaluated in cancellation-free form:
    /// `r_TM = (ε_j - ε₂)[(ε_j + ε₂)q² + ε_j ε₂ ξ²/c²] / (ε_j γ₂ + ε₂ γ_j)²`,
    /// `r_TE = (ε₂ - ε_j)(ξ²/c²) / (γ₂ + γ_j)²`.
    #[inline]
    fn eval(&self, q2: f64, gamma_gap: f64, resp: &Response) -> f64 {
        match *self {
            Reflection::Constant(r) => r,
            Reflection::Tm { eps, k2 } => {
                let e2 = resp.eps[1];
                let gamma = (q2 + k2).sqrt();
                let denom = eps * gamma_gap + e2 * gamma;
                (eps - e2) * ((eps + e2) * q2 + eps * e2 * resp.xi2_c2) / (denom * denom)
            }
            Reflection::Te { eps, k2 } => {
                let gamma = (q2 + k2).sqrt();
                let denom = gamma_gap + gamma;
                (resp.eps[1] - eps) * resp.xi2_c2 / (denom * denom)
            }
        }
    }
}

/// `(ε_j - ε₂)/(ε_j + ε₂)`, with an infinite `ε_j` giving 1.
fn static_delta(e_side: f64, e_gap: f64) -> f64 {
    match (e_side.is_infinite(), e_gap.is_infinite()) {
        (true, true) => 0.0,
        (true, false) => 1.0,
        (false, true) => -1.0,
        (false, false) => (e_side - e_gap) / (e_side + e_gap),
    }
}

/// `γ = sqrt(q² + ε ξ²/c²)`, the normal wave vector on the imaginary axis.
pub fn gamma(q: f64, xi: f64, eps: f64, c: f64) -> Result<f64> {
    if !(q >= 0.0) || !(xi >= 0.0) || !(eps >= 1.0) {
        return Err(Error::Domain(format!(
            "gamma needs q >= 0, xi >= 0, eps >= 1 (got q={q}, xi={xi}, eps={eps})"
        )));
    }
    let k = xi / c;
    Ok((q * q + eps * k * k).sqrt())
}

fn check_separation(d: f64) -> Result<()> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::Domain(format!(
            "separation must be positive and finite, got {d}"
        )));
    }
    Ok(())
}

/// `(k_B T / 2π)(1/4d²)`: converts `∫ u ln(…) du` into J/m².
fn term_prefactor(config: &SystemConfig, d: f64) -> f64 {
    config.thermal_energy() / (8.0 * std::f64::consts::PI * d * d)
}

fn retarded_term(
    config: &SystemConfig,
    resp: &Response,
    pol: Polarization,
    d: f64,
    quad: &QuadratureSpec,
) -> Result<TermValue> {
    let r1 = Reflection::new(resp, 0, pol);
    let r3 = Reflection::new(resp, 2, pol);
    if let (Reflection::Constant(a), Reflection::Constant(b)) = (r1, r3) {
        if a == 0.0 || b == 0.0 {
            return Ok(TermValue {
                value: 0.0,
                error: 0.0,
            });
        }
    }

    let u_min = 2.0 * d * (resp.eps[1] * resp.xi2_c2).sqrt();
    let inv_4d2 = 1.0 / (4.0 * d * d);
    let integrand = |u: f64| -> f64 {
        let q2 = ((u - u_min) * (u + u_min) * inv_4d2).max(0.0);
        let gamma_gap = u / (2.0 * d);
        let product = r1.eval(q2, gamma_gap, resp) * r3.eval(q2, gamma_gap, resp);
        u * (-product * (-u).exp()).ln_1p()
    };

    // Cut the range where the integrand has dropped below CUTOFF_RATIO of
    // its peak.
    let mut peak: f64 = 0.0;
    let mut upper = u_min;
    for k in 1..=400 {
        upper = u_min + k as f64;
        let v = integrand(upper).abs();
        peak = peak.max(v);
        if k >= 4 && v <= CUTOFF_RATIO * peak {
            break;
        }
    }
    if peak == 0.0 {
        return Ok(TermValue {
            value: 0.0,
            error: 0.0,
        });
    }

    let mut breaks = vec![u_min];
    for off in [0.5, 2.0, 8.0, 24.0] {
        if u_min + off < upper {
            breaks.push(u_min + off);
        }
    }
    breaks.push(upper);

    let prefactor = term_prefactor(config, d);
    let tol = Tolerance {
        abs: quad.abs_tol / prefactor,
        rel: quad.rel_tol,
        max_subdivisions: quad.max_subdivisions,
    };
    match integrate(integrand, &breaks, tol) {
        Ok(r) => Ok(TermValue {
            value: prefactor * r.value,
            error: prefactor * r.error,
        }),
        Err(partial) => Err(Error::NoConvergence {
            message: format!(
                "{pol:?} term n={} at d={d:e} m after {} subdivisions",
                resp.n, partial.0.subdivisions
            ),
            partial: prefactor * partial.0.value,
        }),
    }
}

/// Retarded transverse-magnetic Matsubara term `g^TM(ξₙ)` in J/m².
pub fn g_tm(config: &SystemConfig, n: usize, d: f64, quad: &QuadratureSpec) -> Result<TermValue> {
    check_separation(d)?;
    let resp = config.response(n)?;
    retarded_term(config, &resp, Polarization::Tm, d, quad)
}

/// Retarded transverse-electric Matsubara term `g^TE(ξₙ)` in J/m². Exactly
/// zero at `n = 0` unless a half-space is a perfect conductor.
pub fn g_te(config: &SystemConfig, n: usize, d: f64, quad: &QuadratureSpec) -> Result<TermValue> {
    check_separation(d)?;
    let resp = config.response(n)?;
    retarded_term(config, &resp, Polarization::Te, d, quad)
}

fn nonretarded_from_response(config: &SystemConfig, resp: &Response, d: f64) -> Result<f64> {
    let delta = |side: usize| {
        if resp.perfect[side] {
            1.0
        } else {
            static_delta(resp.eps[side], resp.eps[1])
        }
    };
    let z = (delta(0) * delta(2)).clamp(-1.0, 1.0);
    if z == 0.0 {
        return Ok(0.0);
    }
    Ok(-term_prefactor(config, d) * li3(z)?)
}

/// Nonretarded Matsubara term `-(k_B T/8πd²) Li₃(Δ₁Δ₃)` in J/m², with
/// `Δⱼ = (εⱼ - ε₂)/(εⱼ + ε₂)` at `ξₙ`.
pub fn g_nonretarded(config: &SystemConfig, n: usize, d: f64) -> Result<f64> {
    check_separation(d)?;
    let resp = config.response(n)?;
    nonretarded_from_response(config, &resp, d)
}

/// The `n = 0` TM contribution with its half weight: the long-range
/// (entropic) asymptote of the free energy.
pub fn entropic_term(config: &SystemConfig, d: f64, quad: &QuadratureSpec) -> Result<f64> {
    Ok(0.5 * g_tm(config, 0, d, quad)?.value)
}

/// Terms of one Matsubara sum plus the summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralDecomposition {
    pub result: FreeEnergyResult,
    pub terms: Vec<SpectralTerm>,
}

struct Evaluated {
    term: SpectralTerm,
    quad_ok: bool,
}

fn evaluate_term(
    config: &SystemConfig,
    n: usize,
    d: f64,
    mode: Mode,
    quad: &QuadratureSpec,
) -> Result<Evaluated> {
    let resp = config.response(n)?;
    let mut quad_ok = true;
    let mut settle = |r: Result<TermValue>| -> Result<TermValue> {
        match r {
            Ok(v) => Ok(v),
            Err(Error::NoConvergence { partial, .. }) => {
                quad_ok = false;
                Ok(TermValue {
                    value: partial,
                    error: partial.abs(),
                })
            }
            Err(e) => Err(e),
        }
    };
    let (tm, te) = match mode {
        Mode::Retarded => (
            settle(retarded_term(config, &resp, Polarization::Tm, d, quad))?,
            settle(retarded_term(config, &resp, Polarization::Te, d, quad))?,
        ),
        Mode::Nonretarded => (
            TermValue {
                value: nonretarded_from_response(config, &resp, d)?,
                error: 0.0,
            },
            TermValue {
                value: 0.0,
                error: 0.0,
            },
        ),
    };
    Ok(Evaluated {
        term: SpectralTerm {
            n,
            omega_n: resp.xi,
            g_tm: tm.value,
            g_te: te.value,
            quadrature_error: tm.error + te.error,
        },
        quad_ok,
    })
}

fn matsubara_sum(
    config: &SystemConfig,
    d: f64,
    mode: Mode,
    quad: &QuadratureSpec,
    sum: &SumSpec,
    keep_terms: bool,
) -> Result<SpectralDecomposition> {
    check_separation(d)?;
    quad.validate()?;
    sum.validate()?;

    let mut tm = NeumaierSum::new();
    let mut te = NeumaierSum::new();
    let mut total = NeumaierSum::new();
    let mut scale = NeumaierSum::new();
    let mut quad_err = 0.0;
    let mut quad_ok = true;
    let mut streak = 0;
    let mut terms = Vec::new();
    let mut next = 0;
    let mut finished: Option<(usize, bool)> = None;

    while finished.is_none() {
        let end = (next + BATCH).min(sum.hard_max_n + 1);
        let batch: Vec<Result<Evaluated>> = (next..end)
            .into_par_iter()
            .map(|n| evaluate_term(config, n, d, mode, quad))
            .collect();
        // Reduction strictly in ascending n.
        for ev in batch {
            let ev = ev?;
            let t = ev.term;
            let weight = if t.n == 0 { 0.5 } else { 1.0 };
            tm.add(weight * t.g_tm);
            te.add(weight * t.g_te);
            total.add(weight * t.g_tm);
            total.add(weight * t.g_te);
            let magnitude = weight * (t.g_tm.abs() + t.g_te.abs());
            scale.add(magnitude);
            quad_err += weight * t.quadrature_error;
            quad_ok &= ev.quad_ok;
            if keep_terms {
                terms.push(t);
            }
            if magnitude <= sum.term_rel_tol * scale.value() {
                streak += 1;
            } else {
                streak = 0;
            }
            if streak >= sum.guard_window {
                finished = Some((t.n + 1, true));
                break;
            }
            if t.n >= sum.hard_max_n {
                finished = Some((t.n + 1, false));
                break;
            }
        }
        next = end;
    }

    let (n_terms_used, sum_converged) = finished.expect("loop exits only when finished");
    Ok(SpectralDecomposition {
        result: FreeEnergyResult {
            separation: d,
            mode,
            total: total.value(),
            tm_total: tm.value(),
            te_total: te.value(),
            quadrature_error: quad_err,
            n_terms_used,
            converged: sum_converged && quad_ok,
        },
        terms,
    })
}

/// Free energy per unit area `F(d) = Σ′ₙ g(ξₙ)`, in J/m².
///
/// Terms are evaluated in parallel batches but always accumulated in
/// ascending `n` with compensated summation, so the result is
/// bit-identical for any number of worker threads. A sum that hits
/// `hard_max_n`, or a term whose quadrature misses its tolerance, yields a
/// result with `converged == false` rather than an error.
pub fn free_energy(
    config: &SystemConfig,
    d: f64,
    mode: Mode,
    quad: &QuadratureSpec,
    sum: &SumSpec,
) -> Result<FreeEnergyResult> {
    Ok(matsubara_sum(config, d, mode, quad, sum, false)?.result)
}

/// Like [`free_energy`] in retarded mode, also returning every term.
pub fn spectral_terms(
    config: &SystemConfig,
    d: f64,
    quad: &QuadratureSpec,
    sum: &SumSpec,
) -> Result<SpectralDecomposition> {
    matsubara_sum(config, d, Mode::Retarded, quad, sum, true)
}
