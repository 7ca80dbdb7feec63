//! Shared fixtures and brute-force oracles for the integration tests.
#![allow(dead_code)]

use lifshitz::constants::SPEED_OF_LIGHT;
use lifshitz::lifshitz::{Polarization, SystemConfig};
use lifshitz::materials::{shipped, DielectricModel, DrudeTerm, LorentzTerm, OscillatorModel};
use rand::Rng;

pub fn au_bb_sio2() -> SystemConfig {
    SystemConfig::at_room_temperature(
        shipped::gold().model,
        shipped::bromobenzene().model,
        shipped::silica().model,
    )
    .unwrap()
}

pub fn au_bb_au() -> SystemConfig {
    SystemConfig::at_room_temperature(
        shipped::gold().model,
        shipped::bromobenzene().model,
        shipped::gold().model,
    )
    .unwrap()
}

pub fn au_vac_au() -> SystemConfig {
    SystemConfig::at_room_temperature(
        shipped::gold().model,
        DielectricModel::Vacuum,
        shipped::gold().model,
    )
    .unwrap()
}

pub fn lorentz(terms: &[(f64, f64, f64)]) -> DielectricModel {
    let lorentz = terms
        .iter()
        .map(|&(strength, resonance_frequency, damping)| LorentzTerm {
            strength,
            resonance_frequency,
            damping,
        })
        .collect();
    DielectricModel::Oscillator(OscillatorModel::new(vec![], lorentz).unwrap())
}

fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

/// A random Drude-Lorentz model with physically plausible parameters.
pub fn random_oscillator(rng: &mut impl Rng) -> DielectricModel {
    let drude = if rng.gen_bool(0.3) {
        vec![DrudeTerm {
            plasma_frequency: log_uniform(rng, 1e15, 2e16),
            damping: log_uniform(rng, 1e13, 1e14),
        }]
    } else {
        vec![]
    };
    let count = rng.gen_range(1..=3);
    let lorentz = (0..count)
        .map(|_| {
            let wr = log_uniform(rng, 1e13, 1e17);
            LorentzTerm {
                strength: rng.gen_range(0.05..5.0),
                resonance_frequency: wr,
                damping: rng.gen_range(0.0..0.3) * wr,
            }
        })
        .collect();
    DielectricModel::Oscillator(OscillatorModel::new(drude, lorentz).unwrap())
}

/// Reflection factors in their textbook form; independent of the
/// rearranged expressions used by the library.
fn reflection(pol: Polarization, e2: f64, ej: f64, g2: f64, gj: f64) -> f64 {
    match pol {
        Polarization::Tm if ej.is_infinite() => 1.0,
        Polarization::Tm => (ej * g2 - e2 * gj) / (ej * g2 + e2 * gj),
        Polarization::Te if ej.is_infinite() => -1.0,
        Polarization::Te => (g2 - gj) / (g2 + gj),
    }
}

/// `k_B T / 2π ∫ q ln(1 − r₁ r₃ e^{−2γ₂d}) dq` by the trapezoid rule on
/// `points` log-spaced nodes in `q`.
pub fn trapezoid_term(
    config: &SystemConfig,
    n: usize,
    d: f64,
    pol: Polarization,
    points: usize,
) -> f64 {
    let c = SPEED_OF_LIGHT;
    let xi = config.matsubara_frequency(n);
    let e1 = config.material_1().eval_eps(xi).unwrap();
    let e2 = config.material_2().eval_eps(xi).unwrap();
    let e3 = config.material_3().eval_eps(xi).unwrap();
    // A Drude metal has ε ξ² → 0 as ξ → 0, so only ideal conductors keep
    // a static TE reflection.
    let ideal =
        config.material_1().is_perfect_conductor() || config.material_3().is_perfect_conductor();
    if n == 0 && pol == Polarization::Te && !ideal {
        return 0.0;
    }
    let k2 = |e: f64| if n == 0 { 0.0 } else { e * xi * xi / (c * c) };
    let u_min = 2.0 * d * k2(e2).sqrt();
    let q_lo = 1e-6 / d;
    let q_hi = (u_min + 70.0) / (2.0 * d);
    let (s_lo, s_hi) = (q_lo.ln(), q_hi.ln());
    let h = (s_hi - s_lo) / (points - 1) as f64;
    let integrand = |s: f64| {
        let q = s.exp();
        let g2 = (q * q + k2(e2)).sqrt();
        let g1 = (q * q + k2(e1)).sqrt();
        let g3 = (q * q + k2(e3)).sqrt();
        let r1 = reflection(pol, e2, e1, g2, g1);
        let r3 = reflection(pol, e2, e3, g2, g3);
        q * q * (-r1 * r3 * (-2.0 * g2 * d).exp()).ln_1p()
    };
    let mut acc = 0.5 * (integrand(s_lo) + integrand(s_hi));
    for i in 1..points - 1 {
        acc += integrand(s_lo + i as f64 * h);
    }
    config.thermal_energy() / (2.0 * std::f64::consts::PI) * acc * h
}

/// Relative difference, treating two exact zeros as equal.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}
