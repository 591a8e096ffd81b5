//! Exact translational wave numbers, their ħ-free first-order limit and the
//! error between the two.
//!
//! A scatterer that lowers the internal quantum number from `n` to `n − l`
//! releases the energy gap into translation, so the wave number grows by
//! `κ(n − l) − κ(n)`. To first order in `l/n` that shift is `l·ω_eff / v`,
//! which does not contain ħ once the action `nħ` is held fixed. Every
//! approximate value here travels with its exact counterpart.

use crate::error::{Error, Result};
use crate::physcore::{BeamSpec, InternalSystem, PhysicalConstants};
use std::f64::consts::PI;

/// Exact wave number and speed of a beam in one internal level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionPoint {
    pub kappa_exact: f64,
    pub velocity: f64,
    pub system: InternalSystem,
    pub quantum_number: f64,
    pub total_energy: f64,
}

/// Exact and first-order wave number shift for harmonic `l`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveNumberPair {
    pub delta_kappa_exact: f64,
    pub delta_kappa_approx: f64,
    pub harmonic: u32,
    pub relative_error: f64,
}

impl WaveNumberPair {
    /// Wavelength 2π/Δκ of the exact shift.
    pub fn exact_wavelength(&self) -> f64 {
        2.0 * PI / self.delta_kappa_exact
    }

    pub fn approx_wavelength(&self) -> f64 {
        2.0 * PI / self.delta_kappa_approx
    }
}

/// κ = √(2M(E − E_int(n)))/ħ.
pub fn kappa_exact(
    beam: &BeamSpec,
    system: &InternalSystem,
    n: f64,
    c: &PhysicalConstants,
) -> Result<f64> {
    let kinetic = beam.kinetic_energy(system, n, c)?;
    Ok((2.0 * beam.com_mass * kinetic).sqrt() / c.hbar())
}

pub fn dispersion_point(
    beam: &BeamSpec,
    system: &InternalSystem,
    n: f64,
    c: &PhysicalConstants,
) -> Result<DispersionPoint> {
    Ok(DispersionPoint {
        kappa_exact: kappa_exact(beam, system, n, c)?,
        velocity: beam.velocity_at(system, n, c)?,
        system: *system,
        quantum_number: n,
        total_energy: beam.total_energy,
    })
}

/// Wave number shift κ(n − l) − κ(n) on a transition down by `l` levels,
/// together with its first-order value l·ω_eff(n)/v(n).
///
/// The exact difference is formed as 2M·ΔE / (ħ(p(n − l) + p(n))), which
/// keeps full precision when the energy gap is many orders of magnitude
/// below the kinetic energy.
pub fn delta_kappa(
    beam: &BeamSpec,
    system: &InternalSystem,
    n: f64,
    l: u32,
    c: &PhysicalConstants,
) -> Result<WaveNumberPair> {
    if l == 0 {
        return Err(Error::domain("harmonic l must be at least 1"));
    }
    let lf = l as f64;
    if n - lf < 0.0 {
        return Err(Error::domain(format!(
            "transition from {n} down by {l} leaves the spectrum"
        )));
    }
    let mass = beam.com_mass;
    let kin_upper = beam.kinetic_energy(system, n, c)?;
    let kin_lower = beam.kinetic_energy(system, n - lf, c)?;
    let gap = system.energy_gap(n, lf, c)?;
    let p_upper = (2.0 * mass * kin_upper).sqrt();
    let p_lower = (2.0 * mass * kin_lower).sqrt();
    let exact = 2.0 * mass * gap / (c.hbar() * (p_upper + p_lower));

    let velocity = (2.0 * kin_upper / mass).sqrt();
    let approx = lf * (system.effective_frequency(n, c)? / velocity);
    Ok(WaveNumberPair {
        delta_kappa_exact: exact,
        delta_kappa_approx: approx,
        harmonic: l,
        relative_error: (exact - approx).abs() / approx,
    })
}

/// λ = 2πv/(l·ω_eff).
pub fn macroscopic_wavelength(velocity: f64, omega_eff: f64, l: u32) -> Result<f64> {
    if !(velocity.is_finite() && velocity > 0.0) {
        return Err(Error::domain(format!(
            "velocity must be positive, got {velocity}"
        )));
    }
    if !(omega_eff.is_finite() && omega_eff > 0.0) {
        return Err(Error::domain(format!(
            "effective frequency must be positive, got {omega_eff}"
        )));
    }
    if l == 0 {
        return Err(Error::domain("harmonic l must be at least 1"));
    }
    Ok(2.0 * PI * velocity / (l as f64 * omega_eff))
}

/// Rydberg wave number shift l·ω_n/v, with ω_n = 2|E_n|/(nħ) and v the
/// beam speed in level `n`.
pub fn rydberg_delta_p_over_hbar(
    beam: &BeamSpec,
    n: u64,
    l: u32,
    c: &PhysicalConstants,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("Rydberg levels start at n = 1"));
    }
    if l == 0 {
        return Err(Error::domain("harmonic l must be at least 1"));
    }
    let system = InternalSystem::Rydberg;
    let omega_n = system.effective_frequency(n as f64, c)?;
    let v = beam.velocity_at(&system, n as f64, c)?;
    Ok(l as f64 * omega_n / v)
}

/// de Broglie wave number Mv/ħ of a free particle with kinetic energy `kinetic`.
pub fn de_broglie_wave_number(mass: f64, kinetic: f64, c: &PhysicalConstants) -> f64 {
    (2.0 * mass * kinetic).sqrt() / c.hbar()
}
