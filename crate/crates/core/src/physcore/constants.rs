//! CODATA 2018 values in SI units.

/// Elementary charge (C), exact.
pub const ELECTRON_CHARGE: f64 = 1.602_176_634e-19;
/// Electron rest mass (kg).
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
/// Reduced Planck constant (J·s), exact.
pub const PLANCK_REDUCED: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum (m/s), exact.
pub const LIGHT_SPEED: f64 = 299_792_458.0;
/// Rydberg unit of energy, me⁴/2ħ² (eV). Fixed so that results are reproducible.
pub const RYDBERG_ENERGY_EV: f64 = 13.605_693;
/// Electronvolt (J), exact.
pub const ELECTRON_VOLT: f64 = ELECTRON_CHARGE;
/// Unified atomic mass unit (kg).
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;
/// Mass of the hydrogen atom, 1.007 825 u (kg).
pub const HYDROGEN_MASS: f64 = 1.007_825_032 * ATOMIC_MASS_UNIT;

/// The set of constants every formula in the crate draws from.
///
/// [`PhysicalConstants::CODATA`] is the physical set. [`with_hbar`] builds a
/// copy with a different Planck constant; the ħ-independence checks use it to
/// recompute a scenario in a world with a rescaled quantum of action.
///
/// [`with_hbar`]: PhysicalConstants::with_hbar
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub electron_charge: f64,
    pub electron_mass: f64,
    pub planck_reduced: f64,
    pub light_speed: f64,
    pub rydberg_energy: f64,
}

impl PhysicalConstants {
    pub const CODATA: PhysicalConstants = PhysicalConstants {
        electron_charge: ELECTRON_CHARGE,
        electron_mass: ELECTRON_MASS,
        planck_reduced: PLANCK_REDUCED,
        light_speed: LIGHT_SPEED,
        rydberg_energy: RYDBERG_ENERGY_EV * ELECTRON_VOLT,
    };

    /// Same constants with ħ replaced. Panics unless `hbar` is positive and finite.
    pub fn with_hbar(self, hbar: f64) -> Self {
        assert!(
            hbar.is_finite() && hbar > 0.0,
            "hbar must be positive, got {hbar}"
        );
        PhysicalConstants {
            planck_reduced: hbar,
            ..self
        }
    }

    pub fn hbar(&self) -> f64 {
        self.planck_reduced
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA
    }
}
