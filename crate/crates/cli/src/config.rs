//! Run configuration: one TOML file, optionally patched by `--set` overrides.

use crate::error::CliError;
use macrowave::interference::{HarmonicMixture, ScattererGrid};
use macrowave::matrixelem::Perturbation;
use macrowave::physcore::{constants, units, BeamSpec, InternalSystem, PhysicalConstants};
use macrowave::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub system: SystemConfig,
    pub beam: BeamConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dispersion: Option<DispersionConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fringes: Option<FringesConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beats: Option<BeatsConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evolve: Option<EvolveConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixConfig>,
    #[serde(default, skip_serializing_if = "OutputConfig::is_default")]
    pub output: OutputConfig,
}

/// Internal spectrum, in laboratory units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SystemConfig {
    Landau {
        field_gauss: f64,
    },
    Vibrational {
        wavenumber_cm: f64,
        reduced_mass_amu: f64,
    },
    Rotational {
        reduced_mass_amu: f64,
        internuclear_distance_angstrom: f64,
    },
    Rydberg {},
}

/// Beam of composite particles.
///
/// Exactly one of `energy_ev` (translational kinetic energy) and
/// `velocity_cm_s` is given. With `pitch_angle_deg` on a Landau system the
/// energy is the gun energy and the Landau level follows from E·sin²δ.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeamConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energy_ev: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub velocity_cm_s: Option<f64>,
    /// Defaults to the electron mass for Landau and hydrogen for Rydberg.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mass_amu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantum_number: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pitch_angle_deg: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DispersionConfig {
    #[serde(default = "default_harmonics")]
    pub harmonics: Vec<u32>,
}

impl Default for DispersionConfig {
    fn default() -> Self {
        DispersionConfig {
            harmonics: default_harmonics(),
        }
    }
}

fn default_harmonics() -> Vec<u32> {
    vec![1]
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "one")]
    pub coupling_re: f64,
    #[serde(default)]
    pub coupling_im: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            coupling_re: 1.0,
            coupling_im: 0.0,
        }
    }
}

/// One harmonic of a mixture with its weight and transition amplitude β.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HarmonicConfig {
    pub l: u32,
    #[serde(default = "one")]
    pub weight_re: f64,
    #[serde(default)]
    pub weight_im: f64,
    #[serde(default = "one")]
    pub beta_re: f64,
    #[serde(default)]
    pub beta_im: f64,
}

/// Simultaneous vibrational and rotational transition `(l_vib, l_rot)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RovibTerm {
    pub l_vib: u32,
    pub l_rot: u32,
    #[serde(default = "one")]
    pub gamma_re: f64,
    #[serde(default)]
    pub gamma_im: f64,
}

/// Rotor attached to a vibrational system. Terms add in intensity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RovibConfig {
    pub internuclear_distance_angstrom: f64,
    pub rotational_quantum_number: u64,
    #[serde(default = "default_terms")]
    pub terms: Vec<RovibTerm>,
}

fn default_terms() -> Vec<RovibTerm> {
    vec![RovibTerm {
        l_vib: 1,
        l_rot: 1,
        gamma_re: 1.0,
        gamma_im: 0.0,
    }]
}

fn one_u32() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FringesConfig {
    pub separation_min_m: f64,
    pub separation_max_m: f64,
    pub samples: usize,
    #[serde(default)]
    pub grid1: GridConfig,
    #[serde(default)]
    pub grid2: GridConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mixture: Vec<HarmonicConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rovib: Option<RovibConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LengthConfig {
    pub label: String,
    pub length_m: f64,
    #[serde(default = "one")]
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub energy_min_ev: f64,
    pub energy_max_ev: f64,
    pub samples: usize,
    pub lengths: Vec<LengthConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mixture: Vec<HarmonicConfig>,
    /// Extra single-path sweeps used to fit spacing ∝ L^p.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scaling_lengths_m: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeatsConfig {
    pub energy_min_ev: f64,
    pub energy_max_ev: f64,
    pub samples: usize,
    pub plate_length_m: f64,
    pub grid_length_m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialField {
    PlaneWave {
        index: i64,
    },
    Gaussian {
        center_m: f64,
        width_m: f64,
        wave_number_per_m: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveConfig {
    pub points: usize,
    pub domain_length_m: f64,
    pub time_step_s: f64,
    pub steps: usize,
    #[serde(default = "one_u32")]
    pub mode: u32,
    pub initial: InitialField,
    /// Defaults to nħ from the beam.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gyroaction_js: Option<f64>,
    /// Defaults to the system's effective frequency.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_rad_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PerturbationConfig {
    Linear { strength: f64 },
    Quadratic { strength: f64 },
    Gaussian { strength: f64, width_m: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixConfig {
    pub perturbation: PerturbationConfig,
    /// Defaults to the beam quantum number.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantum_number: Option<u64>,
    #[serde(default = "default_matrix_harmonics")]
    pub harmonics: Vec<u64>,
}

fn default_matrix_harmonics() -> Vec<u64> {
    vec![1, 2]
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<String>,
    /// File stem; defaults to the command name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prefix: Option<String>,
}

impl OutputConfig {
    fn is_default(&self) -> bool {
        *self == OutputConfig::default()
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        Self::from_toml_with(text, &[])
    }

    /// Parses `text` after applying `key.path=value` overrides. Values are
    /// read as TOML literals, falling back to plain strings.
    pub fn from_toml_with(text: &str, overrides: &[String]) -> Result<Self, CliError> {
        let mut table: toml::Table =
            toml::from_str(text).map_err(|e| CliError::Config(format!("parse error: {e}")))?;
        for o in overrides {
            apply_override(&mut table, o)?;
        }
        let cfg: RunConfig = toml::Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> Result<String, CliError> {
        toml::to_string(self).map_err(|e| CliError::Config(format!("cannot render config: {e}")))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let b = &self.beam;
        match (b.energy_ev, b.velocity_cm_s) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config(
                    "beam: give either energy_ev or velocity_cm_s, not both".into(),
                ))
            }
            (None, None) => {
                return Err(CliError::Config(
                    "beam: energy_ev or velocity_cm_s is required".into(),
                ))
            }
            _ => {}
        }
        if b.pitch_angle_deg.is_some() {
            if !matches!(self.system, SystemConfig::Landau { .. }) {
                return Err(CliError::Config(
                    "beam.pitch_angle_deg only applies to the landau system".into(),
                ));
            }
            if b.energy_ev.is_none() {
                return Err(CliError::Config(
                    "beam: a pitch angle needs the gun energy energy_ev".into(),
                ));
            }
            if b.quantum_number.is_some() {
                return Err(CliError::Config(
                    "beam: with a pitch angle the Landau level is derived; drop quantum_number"
                        .into(),
                ));
            }
        } else if b.quantum_number.is_none() {
            return Err(CliError::Config("beam.quantum_number is required".into()));
        }
        if matches!(
            self.system,
            SystemConfig::Vibrational { .. } | SystemConfig::Rotational { .. }
        ) && b.mass_amu.is_none()
        {
            return Err(CliError::Config(
                "beam.mass_amu is required for molecular systems".into(),
            ));
        }
        Ok(())
    }

    pub fn internal_system(&self) -> Result<InternalSystem, CliError> {
        Ok(match self.system {
            SystemConfig::Landau { field_gauss } => InternalSystem::landau_from_gauss(field_gauss)?,
            SystemConfig::Vibrational {
                wavenumber_cm,
                reduced_mass_amu,
            } => InternalSystem::vibrational(
                units::wavenumber_cm_to_angular(wavenumber_cm),
                units::amu_to_kg(reduced_mass_amu),
            )?,
            SystemConfig::Rotational {
                reduced_mass_amu,
                internuclear_distance_angstrom,
            } => InternalSystem::rotational(
                units::amu_to_kg(reduced_mass_amu),
                units::angstrom_to_m(internuclear_distance_angstrom),
            )?,
            SystemConfig::Rydberg {} => InternalSystem::Rydberg,
        })
    }

    pub fn beam_mass(&self) -> f64 {
        match (self.beam.mass_amu, &self.system) {
            (Some(m), _) => units::amu_to_kg(m),
            (None, SystemConfig::Rydberg {}) => constants::HYDROGEN_MASS,
            (None, _) => constants::ELECTRON_MASS,
        }
    }

    pub fn beam_spec(&self, c: &PhysicalConstants) -> Result<(InternalSystem, BeamSpec), CliError> {
        self.validate()?;
        let system = self.internal_system()?;
        let mass = self.beam_mass();
        let b = &self.beam;
        let beam = if let Some(deg) = b.pitch_angle_deg {
            let energy = units::ev_to_joule(b.energy_ev.unwrap_or_default());
            let gun = BeamSpec::electron_gun(&system, energy, units::degrees_to_radians(deg), c)?;
            BeamSpec {
                com_mass: mass,
                ..gun
            }
        } else {
            let n = b.quantum_number.unwrap_or_default();
            match (b.energy_ev, b.velocity_cm_s) {
                (Some(e), _) => {
                    BeamSpec::from_kinetic_energy(&system, units::ev_to_joule(e), mass, n, c)?
                }
                (_, Some(v)) => {
                    BeamSpec::from_velocity(&system, units::cm_per_s_to_m_per_s(v), mass, n, c)?
                }
                _ => unreachable!("validated above"),
            }
        };
        Ok((system, beam))
    }
}

fn apply_override(table: &mut toml::Table, raw: &str) -> Result<(), CliError> {
    let (path, value) = raw
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("override '{raw}' is not key=value")))?;
    let keys: Vec<&str> = path.trim().split('.').collect();
    if keys.iter().any(|k| k.is_empty()) {
        return Err(CliError::Config(format!(
            "override '{raw}' has an empty key"
        )));
    }
    let value = parse_literal(value.trim());
    let (last, parents) = keys.split_last().expect("split yields at least one key");
    let mut cur = table;
    for k in parents {
        let entry = cur
            .entry(k.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        cur = entry
            .as_table_mut()
            .ok_or_else(|| CliError::Config(format!("override '{raw}': '{k}' is not a table")))?;
    }
    cur.insert(last.to_string(), value);
    Ok(())
}

fn parse_literal(text: &str) -> toml::Value {
    toml::from_str::<toml::Table>(&format!("v = {text}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(text.to_string()))
}

pub fn complex(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Mixture and per-harmonic β; the fundamental with unit weight when empty.
pub fn mixture_of(
    entries: &[HarmonicConfig],
) -> Result<(HarmonicMixture, std::collections::BTreeMap<u32, Complex64>), CliError> {
    if entries.is_empty() {
        let betas = [(1, complex(1.0, 0.0))].into_iter().collect();
        return Ok((HarmonicMixture::fundamental(), betas));
    }
    let mixture = HarmonicMixture::new(
        entries
            .iter()
            .map(|h| (h.l, complex(h.weight_re, h.weight_im)))
            .collect(),
    )?;
    let betas = entries
        .iter()
        .map(|h| (h.l, complex(h.beta_re, h.beta_im)))
        .collect();
    Ok((mixture, betas))
}

pub fn grid(label: &str, position: f64, g: &GridConfig) -> ScattererGrid {
    ScattererGrid::new(label, position, complex(g.coupling_re, g.coupling_im))
}

impl PerturbationConfig {
    pub fn to_core(&self) -> Perturbation {
        match *self {
            PerturbationConfig::Linear { strength } => Perturbation::Linear { strength },
            PerturbationConfig::Quadratic { strength } => Perturbation::Quadratic { strength },
            PerturbationConfig::Gaussian { strength, width_m } => Perturbation::Gaussian {
                strength,
                width: width_m,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
[system.landau]
field_gauss = 100.0

[beam]
energy_ev = 500.0
quantum_number = 1000
"#;

    #[test]
    fn parses_minimal() {
        let cfg = RunConfig::from_toml(BASE).unwrap();
        assert_eq!(cfg.system, SystemConfig::Landau { field_gauss: 100.0 });
        assert_eq!(cfg.beam.quantum_number, Some(1000));
        assert!(cfg.dispersion.is_none());
    }

    #[test]
    fn missing_system_is_config_error() {
        let err =
            RunConfig::from_toml("[beam]\nenergy_ev = 1.0\nquantum_number = 1\n").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("system"));
    }

    #[test]
    fn rejects_unknown_keys() {
        let text = format!("{BASE}colour = 3\n");
        assert!(RunConfig::from_toml(&text).is_err());
        let text = BASE.replace("field_gauss", "field_tesla");
        assert!(RunConfig::from_toml(&text).is_err());
    }

    #[test]
    fn rejects_two_systems() {
        let text = format!("{BASE}\n[system.rydberg]\n");
        assert!(RunConfig::from_toml(&text).is_err());
    }

    #[test]
    fn overrides_patch_values() {
        let cfg = RunConfig::from_toml_with(
            BASE,
            &[
                "beam.energy_ev=600".into(),
                "system.landau.field_gauss = 150.5".into(),
                "output.prefix=run7".into(),
            ],
        )
        .unwrap();
        assert_eq!(cfg.beam.energy_ev, Some(600.0));
        assert_eq!(cfg.system, SystemConfig::Landau { field_gauss: 150.5 });
        assert_eq!(cfg.output.prefix.as_deref(), Some("run7"));
        assert!(RunConfig::from_toml_with(BASE, &["nonsense".into()]).is_err());
    }

    #[test]
    fn toml_echo_round_trips() {
        let text = format!(
            "{BASE}\n[evolve]\npoints = 64\ndomain_length_m = 1.0\ntime_step_s = 1e-3\nsteps = 10\n\
             initial = {{ kind = \"gaussian\", center_m = 0.5, width_m = 0.05, wave_number_per_m = 30.0 }}\n"
        );
        let cfg = RunConfig::from_toml(&text).unwrap();
        let again = RunConfig::from_toml(&cfg.to_toml().unwrap()).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn beam_rules() {
        let both = BASE.replace(
            "quantum_number = 1000",
            "quantum_number = 1\nvelocity_cm_s = 1e9",
        );
        assert!(RunConfig::from_toml(&both).is_err());
        let no_n = BASE.replace("quantum_number = 1000", "");
        assert!(RunConfig::from_toml(&no_n).is_err());
        let molecule = "[system.vibrational]\nwavenumber_cm = 2000.0\nreduced_mass_amu = 7.0\n\
                        [beam]\nvelocity_cm_s = 1e8\nquantum_number = 10\n";
        assert!(RunConfig::from_toml(molecule).is_err());
        let gun = BASE.replace("quantum_number = 1000", "pitch_angle_deg = 10.0");
        let cfg = RunConfig::from_toml(&gun).unwrap();
        let (_, beam) = cfg.beam_spec(&PhysicalConstants::CODATA).unwrap();
        assert!(beam.central_quantum_number > 1_000_000);
    }
}
