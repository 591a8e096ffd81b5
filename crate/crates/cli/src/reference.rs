//! Published desk-scale estimates, attached to the envelope when a run
//! matches their scenario.

use crate::config::{RunConfig, SystemConfig};
use crate::envelope::{Agreement, Comparison, ResultEnvelope};
use macrowave::physcore::units;
use std::f64::consts::TAU;

fn same(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * b.abs()
}

fn is(v: Option<f64>, target: f64) -> bool {
    v.is_some_and(|v| same(v, target))
}

/// Appends comparisons (and explanatory notes) for every matching scenario.
/// Expects the base scalars already in the envelope.
pub fn attach(cfg: &RunConfig, env: &mut ResultEnvelope) {
    let beam = &cfg.beam;
    let wavelength = env.get("wavelength");
    match cfg.system {
        SystemConfig::Landau { field_gauss } if same(field_gauss, 100.0) => {
            if is(beam.energy_ev, 500.0) {
                if let Some(lambda) = wavelength {
                    let scenario = "electron gun, 500 eV along a 100 G field";
                    env.comparisons.push(Comparison::new(
                        scenario,
                        "wavelength",
                        lambda,
                        0.05,
                        "m",
                        Agreement::Relative { tolerance: 0.10 },
                        format!(
                            "estimate quoted as roughly 5 cm; 2πv/Ω with v = √(2E/m) gives {:.3} cm",
                            lambda * 100.0
                        ),
                    ));
                }
            }
            if is(beam.energy_ev, 1000.0) {
                if let Some(nu) = env.get("landau_quantum_number_scale") {
                    env.comparisons.push(Comparison::new(
                        "electron gun, 1 keV in a 100 G field",
                        "landau_quantum_number_scale",
                        nu,
                        1e8,
                        "1",
                        Agreement::OrderOfMagnitude {
                            lower: 1e8,
                            upper: 1e9,
                        },
                        format!(
                            "estimate quoted as an order of magnitude, ν of order 1e8; E/ħΩ with the whole \
                             gun energy in gyration gives {nu:.3e}"
                        ),
                    ));
                }
            }
        }
        SystemConfig::Landau { field_gauss } if same(field_gauss, 150.0) => {
            if is(beam.velocity_cm_s, 1e9) {
                if let Some(lambda) = wavelength {
                    let quoted = 0.026;
                    env.comparisons.push(Comparison::new(
                        "electron at 1e9 cm/s in a 150 G field",
                        "wavelength",
                        lambda,
                        quoted,
                        "m",
                        Agreement::Relative { tolerance: 0.15 },
                        format!(
                            "estimate quoted as about 2.6 cm for a field of around 150 G; 2πv/Ω at exactly \
                             150 G gives {:.3} cm, and 2.6 cm would need B ≈ {:.0} G",
                            lambda * 100.0,
                            field_gauss * lambda / quoted
                        ),
                    ));
                }
            }
        }
        SystemConfig::Vibrational { wavenumber_cm, .. } if same(wavenumber_cm, 2000.0) => {
            if let (Some(v_cm), Some(lambda)) = (beam.velocity_cm_s, wavelength) {
                if same(v_cm, 1e8) {
                    let v = units::cm_per_s_to_m_per_s(v_cm);
                    let c_nu = macrowave::physcore::constants::LIGHT_SPEED * wavenumber_cm * 100.0;
                    let alternative = TAU * v / c_nu;
                    env.scalar("wavelength_frequency_without_2pi", alternative, "m");
                    let scenario = "diatomic at 2e3 cm^-1 moving at 1e8 cm/s";
                    let note = format!(
                        "estimate quoted as about 0.1 μm; 2πv/ω with ω = 2πc·ṽ gives {:.4} μm, while \
                         2πv/(c·ṽ), which treats c·ṽ as an angular frequency and so drops one factor 2π, \
                         gives {:.4} μm and matches the quoted value",
                        lambda * 1e6,
                        alternative * 1e6
                    );
                    env.comparisons.push(Comparison::new(
                        scenario,
                        "wavelength",
                        lambda,
                        1e-7,
                        "m",
                        Agreement::Range {
                            lower: 1e-8,
                            upper: 2e-7,
                        },
                        note.clone(),
                    ));
                    env.comparisons.push(Comparison::new(
                        scenario,
                        "wavelength_frequency_without_2pi",
                        alternative,
                        1e-7,
                        "m",
                        Agreement::Relative { tolerance: 0.10 },
                        note,
                    ));
                }
            }
        }
        SystemConfig::Rydberg {}
            if beam.quantum_number == Some(100) && is(beam.velocity_cm_s, 1e8) =>
        {
            let scenario = "Rydberg atom, n = 100, moving at 1e8 cm/s";
            if let Some(w) = env.get("effective_frequency") {
                env.comparisons.push(Comparison::new(
                    scenario,
                    "effective_frequency",
                    w,
                    6.6e10,
                    "rad/s",
                    Agreement::Factor { factor: 3.0 },
                    format!(
                        "estimate quoted as 6.6e10 rad/s; 2|E_n|/(nħ) with E_n = −13.605693 eV/n² gives \
                         {w:.3e} rad/s; the quoted figure does not follow from the formula"
                    ),
                ));
            }
            if let Some(k) = env.get("wave_number") {
                env.comparisons.push(Comparison::new(
                    scenario,
                    "wave_number",
                    k,
                    660.0 * 100.0,
                    "rad/m",
                    Agreement::Factor { factor: 3.0 },
                    format!(
                        "estimate quoted as 660 cm^-1; ω_n/v gives {:.0} cm^-1, inheriting the frequency gap",
                        k / 100.0
                    ),
                ));
            }
            if let Some(lambda) = wavelength {
                env.comparisons.push(Comparison::new(
                    scenario,
                    "wavelength",
                    lambda,
                    1e-4,
                    "m",
                    Agreement::Factor { factor: 3.0 },
                    format!(
                        "estimate quoted as about 1e-2 cm; 2π/k_n gives {:.2e} cm",
                        lambda * 100.0
                    ),
                ));
            }
        }
        _ => {}
    }
    let flagged: Vec<String> = env
        .comparisons
        .iter()
        .filter(|c| c.discrepancy)
        .map(|c| {
            format!(
                "{} differs from the published estimate by {:.1}%",
                c.quantity,
                100.0 * c.relative_deviation
            )
        })
        .collect();
    env.notes.extend(flagged);
}
