//! Physical constants, unit conventions and the internal spectra of the
//! composite systems.
//!
//! Quantum numbers are passed as `f64` throughout so that sweeps can
//! interpolate between levels; [`BeamSpec`] stores the central quantum
//! number as an integer.

pub mod constants;
pub mod units;

pub use constants::PhysicalConstants;

use crate::error::{Error, Result};
use std::f64::consts::FRAC_PI_2;

/// Gyrofrequency eB/m of an electron, field given in gauss, result in rad/s.
pub fn gyrofrequency(b_gauss: f64) -> Result<f64> {
    gyrofrequency_with(&PhysicalConstants::CODATA, b_gauss)
}

pub fn gyrofrequency_with(c: &PhysicalConstants, b_gauss: f64) -> Result<f64> {
    if !(b_gauss.is_finite() && b_gauss > 0.0) {
        return Err(Error::domain(format!(
            "magnetic field must be positive, got {b_gauss} G"
        )));
    }
    Ok(c.electron_charge * units::gauss_to_tesla(b_gauss) / c.electron_mass)
}

/// Landau quantum number ν = E⊥/ħΩ, left unrounded.
pub fn landau_quantum_number(e_perp: f64, omega: f64) -> Result<f64> {
    landau_quantum_number_with(&PhysicalConstants::CODATA, e_perp, omega)
}

pub fn landau_quantum_number_with(c: &PhysicalConstants, e_perp: f64, omega: f64) -> Result<f64> {
    if !(e_perp >= 0.0 && e_perp.is_finite()) {
        return Err(Error::domain(format!(
            "perpendicular energy must be non-negative, got {e_perp}"
        )));
    }
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::domain(format!(
            "gyrofrequency must be positive, got {omega}"
        )));
    }
    Ok(e_perp / (c.hbar() * omega))
}

/// Internal spectrum of a composite particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InternalSystem {
    /// Electron gyration in a uniform magnetic field, E = (ν + ½)ħΩ.
    Landau { gyro_frequency: f64 },
    /// Harmonic diatomic vibration, E = (ν + ½)ħω.
    Vibrational { omega: f64, reduced_mass: f64 },
    /// Rigid rotor, E = Kħ²j(j + 1) with K = 1/(2mR²).
    Rotational {
        reduced_mass: f64,
        internuclear_distance: f64,
    },
    /// Hydrogen-like bound states, E = −Ry/n².
    Rydberg,
}

/// Which classical action the quantum number measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionKind {
    Gyroaction,
    Vibrational,
    Angular,
    Principal,
}

/// Classical action nħ attached to a large quantum number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalAction {
    pub value: f64,
    pub kind: ActionKind,
}

impl ClassicalAction {
    pub fn new(system: &InternalSystem, n: f64, c: &PhysicalConstants) -> Result<Self> {
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::domain(format!(
                "classical action needs a positive quantum number, got {n}"
            )));
        }
        let kind = match system {
            InternalSystem::Landau { .. } => ActionKind::Gyroaction,
            InternalSystem::Vibrational { .. } => ActionKind::Vibrational,
            InternalSystem::Rotational { .. } => ActionKind::Angular,
            InternalSystem::Rydberg => ActionKind::Principal,
        };
        Ok(ClassicalAction {
            value: n * c.hbar(),
            kind,
        })
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be positive, got {v}")))
    }
}

fn check_n(n: f64) -> Result<()> {
    if n.is_finite() && n >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "quantum number must be non-negative, got {n}"
        )))
    }
}

impl InternalSystem {
    pub fn landau(gyro_frequency: f64) -> Result<Self> {
        positive("gyrofrequency", gyro_frequency)?;
        Ok(InternalSystem::Landau { gyro_frequency })
    }

    pub fn landau_from_gauss(b_gauss: f64) -> Result<Self> {
        Self::landau(gyrofrequency(b_gauss)?)
    }

    pub fn vibrational(omega: f64, reduced_mass: f64) -> Result<Self> {
        positive("vibrational frequency", omega)?;
        positive("reduced mass", reduced_mass)?;
        Ok(InternalSystem::Vibrational {
            omega,
            reduced_mass,
        })
    }

    pub fn rotational(reduced_mass: f64, internuclear_distance: f64) -> Result<Self> {
        positive("reduced mass", reduced_mass)?;
        positive("internuclear distance", internuclear_distance)?;
        Ok(InternalSystem::Rotational {
            reduced_mass,
            internuclear_distance,
        })
    }

    /// Checks the positivity invariants of a hand-built value.
    pub fn validate(&self) -> Result<()> {
        match *self {
            InternalSystem::Landau { gyro_frequency } => positive("gyrofrequency", gyro_frequency),
            InternalSystem::Vibrational {
                omega,
                reduced_mass,
            } => {
                positive("vibrational frequency", omega)?;
                positive("reduced mass", reduced_mass)
            }
            InternalSystem::Rotational {
                reduced_mass,
                internuclear_distance,
            } => {
                positive("reduced mass", reduced_mass)?;
                positive("internuclear distance", internuclear_distance)
            }
            InternalSystem::Rydberg => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            InternalSystem::Landau { .. } => "landau",
            InternalSystem::Vibrational { .. } => "vibrational",
            InternalSystem::Rotational { .. } => "rotational",
            InternalSystem::Rydberg => "rydberg",
        }
    }

    /// Rotational constant K = 1/(2mR²), `None` for the other systems.
    pub fn rotational_constant(&self) -> Option<f64> {
        match *self {
            InternalSystem::Rotational {
                reduced_mass,
                internuclear_distance,
            } => Some(1.0 / (2.0 * reduced_mass * internuclear_distance * internuclear_distance)),
            _ => None,
        }
    }

    /// Level energy in joules. Rydberg levels are negative.
    pub fn energy(&self, n: f64, c: &PhysicalConstants) -> Result<f64> {
        check_n(n)?;
        let hbar = c.hbar();
        Ok(match *self {
            InternalSystem::Landau { gyro_frequency } => (n + 0.5) * hbar * gyro_frequency,
            InternalSystem::Vibrational { omega, .. } => (n + 0.5) * hbar * omega,
            InternalSystem::Rotational { .. } => {
                let k = self.rotational_constant().unwrap_or_default();
                k * hbar * hbar * n * (n + 1.0)
            }
            InternalSystem::Rydberg => {
                if n == 0.0 {
                    return Err(Error::domain("Rydberg levels start at n = 1"));
                }
                -c.rydberg_energy / (n * n)
            }
        })
    }

    /// Level energy in the large quantum number form: j(j + 1) → j² for the
    /// rotor, identical to [`energy`](Self::energy) otherwise.
    pub fn semiclassical_energy(&self, n: f64, c: &PhysicalConstants) -> Result<f64> {
        match *self {
            InternalSystem::Rotational { .. } => {
                check_n(n)?;
                let k = self.rotational_constant().unwrap_or_default();
                Ok(k * c.hbar() * c.hbar() * n * n)
            }
            _ => self.energy(n, c),
        }
    }

    /// E(n) − E(n − l), evaluated in closed form so that no significant
    /// digits are lost when n ≫ l.
    pub fn energy_gap(&self, n: f64, l: f64, c: &PhysicalConstants) -> Result<f64> {
        check_n(n)?;
        if !(l >= 0.0 && l <= n) {
            return Err(Error::domain(format!(
                "harmonic {l} must lie in [0, n] with n = {n}"
            )));
        }
        let hbar = c.hbar();
        Ok(match *self {
            InternalSystem::Landau { gyro_frequency } => l * hbar * gyro_frequency,
            InternalSystem::Vibrational { omega, .. } => l * hbar * omega,
            InternalSystem::Rotational { .. } => {
                let k = self.rotational_constant().unwrap_or_default();
                k * hbar * hbar * l * (2.0 * n - l + 1.0)
            }
            InternalSystem::Rydberg => {
                let lower = n - l;
                if lower < 1.0 {
                    return Err(Error::domain("Rydberg levels start at n = 1"));
                }
                c.rydberg_energy * l * (2.0 * n - l) / (n * n * lower * lower)
            }
        })
    }

    /// Frequency ω_eff that sets the macroscopic wave number ω_eff / v.
    pub fn effective_frequency(&self, n: f64, c: &PhysicalConstants) -> Result<f64> {
        check_n(n)?;
        match *self {
            InternalSystem::Landau { gyro_frequency } => Ok(gyro_frequency),
            InternalSystem::Vibrational { omega, .. } => Ok(omega),
            InternalSystem::Rotational {
                reduced_mass,
                internuclear_distance,
            } => {
                if n == 0.0 {
                    return Err(Error::domain("rotational frequency vanishes at j = 0"));
                }
                Ok(c.hbar() * n / (reduced_mass * internuclear_distance * internuclear_distance))
            }
            InternalSystem::Rydberg => {
                if n == 0.0 {
                    return Err(Error::domain("Rydberg levels start at n = 1"));
                }
                let e_n = self.energy(n, c)?;
                Ok(2.0 * e_n.abs() / (n * c.hbar()))
            }
        }
    }
}

/// Beam of composite particles: total energy, centre-of-mass mass, central
/// internal quantum number and, for electrons, the pitch angle to the field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSpec {
    pub total_energy: f64,
    pub com_mass: f64,
    pub central_quantum_number: u64,
    pub pitch_angle: f64,
}

impl BeamSpec {
    pub fn new(
        system: &InternalSystem,
        total_energy: f64,
        com_mass: f64,
        central_quantum_number: u64,
        pitch_angle: f64,
        c: &PhysicalConstants,
    ) -> Result<Self> {
        system.validate()?;
        positive("centre-of-mass mass", com_mass)?;
        if !(0.0..FRAC_PI_2).contains(&pitch_angle) {
            return Err(Error::domain(format!(
                "pitch angle must lie in [0, π/2), got {pitch_angle}"
            )));
        }
        if pitch_angle != 0.0 && !matches!(system, InternalSystem::Landau { .. }) {
            return Err(Error::domain(
                "pitch angle only applies to the Landau system",
            ));
        }
        let internal = system.energy(central_quantum_number as f64, c)?;
        if !(total_energy.is_finite() && total_energy > internal) {
            return Err(Error::Evanescent {
                total_energy,
                internal_energy: internal,
            });
        }
        Ok(BeamSpec {
            total_energy,
            com_mass,
            central_quantum_number,
            pitch_angle,
        })
    }

    /// Beam whose translational kinetic energy is `kinetic` on top of level `n`.
    pub fn from_kinetic_energy(
        system: &InternalSystem,
        kinetic: f64,
        com_mass: f64,
        n: u64,
        c: &PhysicalConstants,
    ) -> Result<Self> {
        positive("kinetic energy", kinetic)?;
        let total = system.energy(n as f64, c)? + kinetic;
        Self::new(system, total, com_mass, n, 0.0, c)
    }

    /// Beam moving at `velocity` in level `n`.
    pub fn from_velocity(
        system: &InternalSystem,
        velocity: f64,
        com_mass: f64,
        n: u64,
        c: &PhysicalConstants,
    ) -> Result<Self> {
        positive("velocity", velocity)?;
        Self::from_kinetic_energy(system, 0.5 * com_mass * velocity * velocity, com_mass, n, c)
    }

    /// Electron gun of kinetic energy `energy` injected at `pitch_angle` to
    /// the field. The Landau level is the one nearest E sin²δ / ħΩ and the
    /// remainder of the energy goes into motion along the field.
    pub fn electron_gun(
        system: &InternalSystem,
        energy: f64,
        pitch_angle: f64,
        c: &PhysicalConstants,
    ) -> Result<Self> {
        let InternalSystem::Landau { gyro_frequency } = *system else {
            return Err(Error::domain("electron gun beams need the Landau system"));
        };
        positive("gun energy", energy)?;
        let e_perp = energy * pitch_angle.sin().powi(2);
        let nu = landau_quantum_number_with(c, e_perp, gyro_frequency)?.round();
        // zero-point energy rides on top of the gun energy, so E − E_int(ν) = E − νħΩ
        let total = energy + 0.5 * c.hbar() * gyro_frequency;
        Self::new(system, total, c.electron_mass, nu as u64, pitch_angle, c)
    }

    /// Translational kinetic energy E − E_int(n).
    pub fn kinetic_energy(
        &self,
        system: &InternalSystem,
        n: f64,
        c: &PhysicalConstants,
    ) -> Result<f64> {
        let internal = system.energy(n, c)?;
        let k = self.total_energy - internal;
        if k > 0.0 {
            Ok(k)
        } else {
            Err(Error::Evanescent {
                total_energy: self.total_energy,
                internal_energy: internal,
            })
        }
    }

    /// Centre-of-mass speed (speed along the field for electrons) in level `n`.
    pub fn velocity_at(
        &self,
        system: &InternalSystem,
        n: f64,
        c: &PhysicalConstants,
    ) -> Result<f64> {
        Ok((2.0 * self.kinetic_energy(system, n, c)? / self.com_mass).sqrt())
    }

    /// Speed in the central level.
    pub fn velocity(&self, system: &InternalSystem, c: &PhysicalConstants) -> Result<f64> {
        self.velocity_at(system, self.central_quantum_number as f64, c)
    }
}
