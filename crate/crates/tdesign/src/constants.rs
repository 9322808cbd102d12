//! Physical constants (SI). Single source of truth for the whole crate.

/// Coulomb constant 1/(4πε₀), N·m²/C².
pub const COULOMB: f64 = 8.987_551_792_3e9;

/// Newtonian gravitational constant, N·m²/kg².
pub const GRAVITATION: f64 = 6.674_30e-11;

/// Elementary charge, C.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Density of diamond, kg/m³. Used by the sphere-composite body builder;
/// scenario configs may override.
pub const DIAMOND_DENSITY: f64 = 3510.0;

/// Converts an energy difference in joules to a phase rate in rad/s.
pub fn energy_to_rad_per_s(energy_j: f64) -> f64 {
    energy_j / HBAR
}

/// Converts a phase rate in rad/s to cycles per second.
pub fn rad_per_s_to_hz(rad_per_s: f64) -> f64 {
    rad_per_s / (2.0 * std::f64::consts::PI)
}
