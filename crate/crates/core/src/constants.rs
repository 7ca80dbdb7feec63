//! CODATA 2018 physical constants (exact or recommended values), SI units.

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Default temperature for all calculations, K.
pub const DEFAULT_TEMPERATURE: f64 = 300.0;

/// Matsubara frequency `ξₙ = 2πn k_B T / ħ` in rad/s.
pub fn matsubara_frequency(n: usize, temperature: f64) -> f64 {
    2.0 * std::f64::consts::PI * n as f64 * BOLTZMANN * temperature / HBAR
}

/// Ideal (perfect-conductor, zero-temperature) Casimir energy per unit area,
/// `-π² ħ c / (720 d³)`, in J/m².
pub fn ideal_casimir_energy(separation: f64) -> f64 {
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    -pi2 * HBAR * SPEED_OF_LIGHT / (720.0 * separation.powi(3))
}
