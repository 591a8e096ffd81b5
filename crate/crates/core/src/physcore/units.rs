//! Conversions from lab units to SI. Everything past the crate boundary is SI.

use super::constants::{ATOMIC_MASS_UNIT, ELECTRON_VOLT, LIGHT_SPEED};
use std::f64::consts::PI;

pub const GAUSS: f64 = 1e-4;
pub const ANGSTROM: f64 = 1e-10;
pub const CENTIMETRE: f64 = 1e-2;
pub const MICROMETRE: f64 = 1e-6;

pub fn gauss_to_tesla(b: f64) -> f64 {
    b * GAUSS
}

pub fn ev_to_joule(e: f64) -> f64 {
    e * ELECTRON_VOLT
}

pub fn joule_to_ev(e: f64) -> f64 {
    e / ELECTRON_VOLT
}

pub fn amu_to_kg(m: f64) -> f64 {
    m * ATOMIC_MASS_UNIT
}

pub fn angstrom_to_m(r: f64) -> f64 {
    r * ANGSTROM
}

pub fn cm_per_s_to_m_per_s(v: f64) -> f64 {
    v * CENTIMETRE
}

/// Spectroscopic wavenumber ω/2πc in cm⁻¹ to angular frequency in rad/s.
pub fn wavenumber_cm_to_angular(nu_tilde: f64) -> f64 {
    2.0 * PI * LIGHT_SPEED * nu_tilde / CENTIMETRE
}

/// Inverse of [`wavenumber_cm_to_angular`].
pub fn angular_to_wavenumber_cm(omega: f64) -> f64 {
    omega * CENTIMETRE / (2.0 * PI * LIGHT_SPEED)
}

pub fn degrees_to_radians(deg: f64) -> f64 {
    deg.to_radians()
}
