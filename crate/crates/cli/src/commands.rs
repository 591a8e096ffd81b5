//! The six subcommands. Each turns a [`RunConfig`] into an envelope and an
//! table without touching the filesystem.

use crate::config::{self, InitialField, RunConfig, SystemConfig};
use crate::envelope::{ResultEnvelope, Table};
use crate::error::CliError;
use crate::reference;
use macrowave::analysis::{self, find_peaks, PathLength};
use macrowave::dispersion::{self, de_broglie_wave_number};
use macrowave::evolution::{self, EvolutionParams, OmegaProfile, WaveField};
use macrowave::interference::{self, rovib_intensity};
use macrowave::matrixelem::{self, OscillatorBasis, Perturbation, NU_MAX};
use macrowave::par::Exec;
use macrowave::physcore::{units, BeamSpec, InternalSystem, PhysicalConstants};
use std::f64::consts::TAU;

const C: PhysicalConstants = PhysicalConstants::CODATA;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Dispersion,
    Fringes,
    Sweep,
    Beats,
    Evolve,
    Matrix,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Dispersion => "dispersion",
            Command::Fringes => "fringes",
            Command::Sweep => "sweep",
            Command::Beats => "beats",
            Command::Evolve => "evolve",
            Command::Matrix => "matrix",
        }
    }
}

/// Result of one command before anything is written.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub envelope: ResultEnvelope,
    pub table: Table,
}

pub fn execute(cmd: Command, cfg: &RunConfig, exec: Exec) -> Result<Outcome, CliError> {
    let mut env = ResultEnvelope::new(cmd.name(), cfg);
    let ctx = base(cfg, &mut env).map_err(|e| e.in_block("beam"))?;
    reference::attach(cfg, &mut env);
    let table = match cmd {
        Command::Dispersion => {
            dispersion(cfg, &ctx, &mut env).map_err(|e| e.in_block("dispersion"))?
        }
        Command::Fringes => {
            fringes(cfg, &ctx, &mut env, exec).map_err(|e| e.in_block("fringes"))?
        }
        Command::Sweep => sweep(cfg, &ctx, &mut env, exec).map_err(|e| e.in_block("sweep"))?,
        Command::Beats => beats(cfg, &ctx, &mut env, exec).map_err(|e| e.in_block("beats"))?,
        Command::Evolve => evolve(cfg, &ctx, &mut env).map_err(|e| e.in_block("evolve"))?,
        Command::Matrix => matrix(cfg, &ctx, &mut env).map_err(|e| e.in_block("matrix"))?,
    };
    Ok(Outcome {
        envelope: env,
        table,
    })
}

/// Quantities shared by every command.
struct Context {
    system: InternalSystem,
    beam: BeamSpec,
    n: u64,
    velocity: f64,
    omega_eff: f64,
}

fn base(cfg: &RunConfig, env: &mut ResultEnvelope) -> Result<Context, CliError> {
    let (system, beam) = cfg.beam_spec(&C)?;
    let n = beam.central_quantum_number;
    let velocity = beam.velocity(&system, &C)?;
    let omega_eff = system.effective_frequency(n as f64, &C)?;
    let kinetic = beam.kinetic_energy(&system, n as f64, &C)?;
    let k = omega_eff / velocity;

    env.scalar("quantum_number", n as f64, "1");
    env.scalar("classical_action", n as f64 * C.hbar(), "J s");
    env.scalar("kinetic_energy", units::joule_to_ev(kinetic), "eV");
    env.scalar("velocity", velocity, "m/s");
    env.scalar("effective_frequency", omega_eff, "rad/s");
    env.scalar("wave_number", k, "rad/m");
    env.scalar("wavelength", TAU / k, "m");
    env.scalar(
        "de_broglie_wavelength",
        TAU / de_broglie_wave_number(beam.com_mass, kinetic, &C),
        "m",
    );
    match system {
        InternalSystem::Landau { gyro_frequency } => {
            let energy = cfg
                .beam
                .energy_ev
                .map(units::ev_to_joule)
                .unwrap_or(kinetic);
            env.scalar(
                "landau_quantum_number_scale",
                energy / (C.hbar() * gyro_frequency),
                "1",
            );
        }
        InternalSystem::Rydberg => {
            env.scalar("level_energy", system.energy(n as f64, &C)?, "J");
        }
        _ => {}
    }
    Ok(Context {
        system,
        beam,
        n,
        velocity,
        omega_eff,
    })
}

fn dispersion(cfg: &RunConfig, ctx: &Context, env: &mut ResultEnvelope) -> Result<Table, CliError> {
    let block = cfg.dispersion.clone().unwrap_or_default();
    if block.harmonics.is_empty() {
        return Err(CliError::Config("harmonics must not be empty".into()));
    }
    let kappa = dispersion::kappa_exact(&ctx.beam, &ctx.system, ctx.n as f64, &C)?;
    env.scalar("kappa_exact", kappa, "rad/m");
    let mut table = Table::new(&[
        "harmonic",
        "delta_kappa_exact_per_m",
        "delta_kappa_approx_per_m",
        "relative_error",
        "wavelength_exact_m",
        "wavelength_approx_m",
    ]);
    for &l in &block.harmonics {
        let pair = dispersion::delta_kappa(&ctx.beam, &ctx.system, ctx.n as f64, l, &C)?;
        env.scalar(
            format!("delta_kappa_exact_l{l}"),
            pair.delta_kappa_exact,
            "rad/m",
        );
        env.scalar(
            format!("delta_kappa_approx_l{l}"),
            pair.delta_kappa_approx,
            "rad/m",
        );
        env.scalar(format!("relative_error_l{l}"), pair.relative_error, "1");
        env.scalar(format!("wavelength_l{l}"), pair.approx_wavelength(), "m");
        if let InternalSystem::Rydberg = ctx.system {
            let dp = dispersion::rydberg_delta_p_over_hbar(&ctx.beam, ctx.n, l, &C)?;
            env.scalar(format!("rydberg_delta_p_over_hbar_l{l}"), dp, "rad/m");
        }
        table.push(vec![
            l as f64,
            pair.delta_kappa_exact,
            pair.delta_kappa_approx,
            pair.relative_error,
            pair.exact_wavelength(),
            pair.approx_wavelength(),
        ]);
    }
    if let InternalSystem::Rotational { .. } = ctx.system {
        env.note("the first-order shift uses the j² form of the rotor energy; the exact shift uses j(j+1)");
    }
    Ok(table)
}

fn prominence_floor(y: &[f64]) -> f64 {
    let (lo, hi) = y
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
            (a.min(v), b.max(v))
        });
    ((hi - lo) * 1e-3).max(f64::MIN_POSITIVE)
}

fn fringes(
    cfg: &RunConfig,
    ctx: &Context,
    env: &mut ResultEnvelope,
    exec: Exec,
) -> Result<Table, CliError> {
    let block = cfg
        .fringes
        .as_ref()
        .ok_or_else(|| CliError::Config("missing [fringes] block".into()))?;
    let seps = interference::separations(
        block.separation_min_m,
        block.separation_max_m,
        block.samples,
    )?;
    let g1 = config::grid("G1", 0.0, &block.grid1);
    let g2 = config::grid("G2", 0.0, &block.grid2);
    let k = ctx.omega_eff / ctx.velocity;

    let pattern = if let Some(rv) = &block.rovib {
        let SystemConfig::Vibrational {
            reduced_mass_amu, ..
        } = cfg.system
        else {
            return Err(CliError::Config(
                "rovib needs the vibrational system".into(),
            ));
        };
        if rv.terms.is_empty() {
            return Err(CliError::Config("rovib.terms must not be empty".into()));
        }
        let rotor = InternalSystem::rotational(
            units::amu_to_kg(reduced_mass_amu),
            units::angstrom_to_m(rv.internuclear_distance_angstrom),
        )?;
        let k_rot =
            rotor.effective_frequency(rv.rotational_quantum_number as f64, &C)? / ctx.velocity;
        env.scalar("rotational_wave_number", k_rot, "rad/m");
        env.scalar("vib_to_rot_wave_number_ratio", k / k_rot, "1");
        for t in &rv.terms {
            let kc = t.l_vib as f64 * k + t.l_rot as f64 * k_rot;
            if kc > 0.0 {
                env.scalar(
                    format!("fringe_period_v{}_j{}", t.l_vib, t.l_rot),
                    TAU / kc,
                    "m",
                );
            }
        }
        interference::sample_pattern(&g1, &g2, seps, exec, |a, b| {
            rv.terms
                .iter()
                .map(|t| {
                    rovib_intensity(
                        a,
                        b,
                        k,
                        k_rot,
                        t.l_vib,
                        t.l_rot,
                        config::complex(t.gamma_re, t.gamma_im),
                    )
                })
                .sum()
        })
    } else {
        let (mixture, betas) = config::mixture_of(&block.mixture)?;
        for l in mixture.harmonics() {
            env.scalar(format!("fringe_period_l{l}"), TAU / (l as f64 * k), "m");
        }
        // fail before sampling if a β is missing
        interference::mixture_intensity(&g1, &g2, k, &mixture, &betas)?;
        interference::sample_pattern(&g1, &g2, seps, exec, |a, b| {
            interference::mixture_intensity(a, b, k, &mixture, &betas).unwrap_or(f64::NAN)
        })
    };

    let peaks = find_peaks(
        &pattern.separation,
        &pattern.intensity,
        prominence_floor(&pattern.intensity),
    );
    env.scalar("maxima_count", peaks.len() as f64, "1");
    if peaks.len() >= 2 {
        let span = peaks[peaks.len() - 1].position - peaks[0].position;
        env.scalar("mean_maximum_spacing", span / (peaks.len() - 1) as f64, "m");
    }
    let mut table = Table::new(&["X1_minus_X2_m", "intensity"]);
    for (d, i) in pattern.separation.iter().zip(&pattern.intensity) {
        table.push(vec![*d, *i]);
    }
    Ok(table)
}

fn sweep_config(
    ctx: &Context,
    e_min_ev: f64,
    e_max_ev: f64,
    samples: usize,
    lengths: Vec<PathLength>,
    mixture: macrowave::interference::HarmonicMixture,
) -> analysis::SweepConfig {
    analysis::SweepConfig {
        energy_min: units::ev_to_joule(e_min_ev),
        energy_max: units::ev_to_joule(e_max_ev),
        sample_count: samples,
        lengths,
        system: ctx.system,
        beam: ctx.beam,
        mixture,
    }
}

fn spectrum_table(spec: &analysis::Spectrum) -> Table {
    let mut table = Table::new(&["energy_eV", "signal"]);
    for (e, s) in spec.abscissa.iter().zip(&spec.signal) {
        table.push(vec![units::joule_to_ev(*e), *s]);
    }
    table
}

const SIGNAL_MODEL: &str =
    "detector model: unit-coupling two-path cosines per flight length, lengths added as independent terms";

fn sweep(
    cfg: &RunConfig,
    ctx: &Context,
    env: &mut ResultEnvelope,
    exec: Exec,
) -> Result<Table, CliError> {
    let block = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Config("missing [sweep] block".into()))?;
    let (mixture, _) = config::mixture_of(&block.mixture)?;
    let lengths = block
        .lengths
        .iter()
        .map(|l| PathLength {
            label: l.label.clone(),
            length: l.length_m,
            weight: l.weight,
        })
        .collect();
    let sc = sweep_config(
        ctx,
        block.energy_min_ev,
        block.energy_max_ev,
        block.samples,
        lengths,
        mixture,
    );
    let spec = analysis::transmission_sweep_with(&sc, &C, exec)?;
    let report = analysis::detect_peaks(&spec, prominence_floor(&spec.signal))?;
    env.scalar("band_count", report.peak_positions.len() as f64, "1");
    if let Some(s) = report.mean_spacing {
        env.scalar("mean_band_spacing", units::joule_to_ev(s), "eV");
    }
    if let [only] = sc.lengths.as_slice() {
        if report.peak_positions.len() >= 2 {
            // ΔE = 4πE·v/(ω_eff·L) at the centre of the detected bands
            let mid = 0.5
                * (report.peak_positions[0]
                    + report.peak_positions[report.peak_positions.len() - 1]);
            let v = (2.0 * mid / ctx.beam.com_mass).sqrt();
            let analytic = 2.0 * TAU * mid * v / (ctx.omega_eff * only.length);
            env.scalar(
                "analytic_band_spacing_at_centre",
                units::joule_to_ev(analytic),
                "eV",
            );
        }
    }
    if !block.scaling_lengths_m.is_empty() {
        let scaling = analysis::inverse_length_check_with(&sc, &block.scaling_lengths_m, &C, exec)?;
        for (l, s) in &scaling.points {
            env.scalar(
                format!("band_spacing_at_{l}m"),
                units::joule_to_ev(*s),
                "eV",
            );
        }
        match scaling.exponent {
            Some(p) => env.scalar("length_exponent", p, "1"),
            None => env.note("scaling lengths are not distinct; no exponent fitted"),
        }
    }
    env.note(SIGNAL_MODEL);
    Ok(spectrum_table(&spec))
}

fn beats(
    cfg: &RunConfig,
    ctx: &Context,
    env: &mut ResultEnvelope,
    exec: Exec,
) -> Result<Table, CliError> {
    let block = cfg
        .beats
        .as_ref()
        .ok_or_else(|| CliError::Config("missing [beats] block".into()))?;
    let (lp, lg) = (block.plate_length_m, block.grid_length_m);
    let lengths = vec![PathLength::new("Lp", lp), PathLength::new("Lg", lg)];
    let sc = sweep_config(
        ctx,
        block.energy_min_ev,
        block.energy_max_ev,
        block.samples,
        lengths,
        macrowave::interference::HarmonicMixture::fundamental(),
    );
    let spec = analysis::transmission_sweep_with(&sc, &C, exec)?;
    let report = analysis::beat_envelope(&spec)?;
    env.scalar(
        "carrier_peak_count",
        report.peak_positions.len() as f64,
        "1",
    );
    if let Some(p) = report.carrier_period {
        env.scalar("carrier_period", units::joule_to_ev(p), "eV");
    }
    if (lp - lg).abs() > 0.0 {
        env.scalar(
            "predicted_period_ratio",
            2.0 * lp.max(lg) / (lp - lg).abs(),
            "1",
        );
    }
    match (
        report.beat_period,
        report.envelope_period,
        report.period_ratio,
    ) {
        (Some(b), Some(e), Some(r)) => {
            env.scalar("beat_period", units::joule_to_ev(b), "eV");
            env.scalar("envelope_period", units::joule_to_ev(e), "eV");
            env.scalar("period_ratio", r, "1");
            env.note(
                "envelope_period is the full modulation cycle, twice the spacing of envelope zeros, \
                 since the carrier changes sign at every zero",
            );
        }
        _ => env.note("no beat modulation detected"),
    }
    env.note(SIGNAL_MODEL);
    Ok(spectrum_table(&spec))
}

fn evolve(cfg: &RunConfig, ctx: &Context, env: &mut ResultEnvelope) -> Result<Table, CliError> {
    let block = cfg
        .evolve
        .as_ref()
        .ok_or_else(|| CliError::Config("missing [evolve] block".into()))?;
    let mu = match block.gyroaction_js {
        Some(m) => m,
        None if ctx.n > 0 => ctx.n as f64 * C.hbar(),
        None => {
            return Err(CliError::Config(
                "gyroaction_js is required when the beam quantum number is 0".into(),
            ))
        }
    };
    let omega = block.omega_rad_s.unwrap_or(ctx.omega_eff);
    let profile = OmegaProfile::Constant(omega);
    let field = match block.initial {
        InitialField::PlaneWave { index } => WaveField::plane_wave(
            block.points,
            block.domain_length_m,
            index,
            block.mode,
            mu,
            profile,
        )?,
        InitialField::Gaussian {
            center_m,
            width_m,
            wave_number_per_m,
        } => WaveField::gaussian_packet(
            block.points,
            block.domain_length_m,
            center_m,
            width_m,
            wave_number_per_m,
            block.mode,
            mu,
            profile,
        )?,
    };
    let params = EvolutionParams::new(block.time_step_s, block.steps)?;
    let out = evolution::evolve(&field, &params)?;
    let t = params.time_step * params.step_count as f64;
    let l = block.mode;

    env.scalar("gyroaction", mu, "J s");
    env.scalar("omega", omega, "rad/s");
    env.scalar("elapsed_time", t, "s");
    env.scalar("accuracy_ratio", params.accuracy_ratio(&field), "1");
    let (n0, n1) = (field.norm(), out.norm());
    env.scalar("norm_initial", n0, "m^1/2");
    env.scalar("norm_drift", (n1 - n0).abs() / n0, "1");

    match block.initial {
        InitialField::PlaneWave { index } => {
            let k = TAU * index as f64 / block.domain_length_m;
            let w = evolution::dispersion_check(mu, omega, l, k)?;
            env.scalar("analytic_frequency", w, "rad/s");
            if w.abs() * params.time_step < std::f64::consts::PI {
                let measured = -evolution::tracked_phase(&field, &params, 0)? / t;
                env.scalar("measured_frequency", measured, "rad/s");
                env.scalar("dispersion_residual", (measured - w).abs() / w.abs(), "1");
            } else {
                env.note(
                    "time step too coarse to unwrap the plane-wave phase; residual not measured",
                );
            }
        }
        InitialField::Gaussian {
            wave_number_per_m, ..
        } => {
            let vg = 2.0 * mu / l as f64 * wave_number_per_m;
            env.scalar("group_velocity_analytic", vg, "m/s");
            env.scalar(
                "group_velocity_measured",
                (out.centroid() - field.centroid()) / t,
                "m/s",
            );
            env.note("the centroid is meaningful only while the packet stays clear of the periodic boundary");
        }
    }
    let mut table = Table::new(&["x_m", "re", "im", "abs2"]);
    for (x, z) in out.positions().iter().zip(&out.samples) {
        table.push(vec![*x, z.re, z.im, z.norm_sqr()]);
    }
    Ok(table)
}

fn matrix(cfg: &RunConfig, ctx: &Context, env: &mut ResultEnvelope) -> Result<Table, CliError> {
    let block = cfg
        .matrix
        .as_ref()
        .ok_or_else(|| CliError::Config("missing [matrix] block".into()))?;
    let basis = match ctx.system {
        InternalSystem::Landau { gyro_frequency } => {
            OscillatorBasis::new(ctx.beam.com_mass, gyro_frequency, &C)?
        }
        InternalSystem::Vibrational {
            omega,
            reduced_mass,
        } => OscillatorBasis::new(reduced_mass, omega, &C)?,
        _ => {
            return Err(CliError::Config(
                "matrix elements need an oscillator: landau or vibrational system".into(),
            ))
        }
    };
    let pert = block.perturbation.to_core();
    let nu = block.quantum_number.unwrap_or(ctx.n);
    env.scalar("length_scale", basis.length_scale, "m");
    let b = basis.length_scale;
    // natural size of the matrix elements, used to scale the agreement check
    let scale = match pert {
        Perturbation::Linear { strength } => strength.abs() * b * (nu as f64 + 1.0).sqrt(),
        Perturbation::Quadratic { strength } => strength.abs() * b * b * (nu as f64 + 1.0),
        Perturbation::Gaussian { strength, .. } => strength.abs(),
    };
    let mut table = Table::new(&["harmonic", "beta", "quadrature", "quadrature_nodes"]);
    for &l in &block.harmonics {
        let beta = matrixelem::beta(&basis, &pert, nu, l)?;
        env.scalar(format!("beta_l{l}"), beta, "J");
        let (q, nodes) = if nu <= NU_MAX {
            let est = matrixelem::matrix_element_quadrature(&basis, &pert, nu - l, nu)?;
            if !est.converged {
                env.note(format!(
                    "quadrature for l = {l} stopped at {} nodes without converging",
                    est.nodes
                ));
            }
            (est.value, est.nodes as f64)
        } else {
            (f64::NAN, 0.0)
        };
        if q.is_finite() {
            env.scalar(format!("quadrature_l{l}"), q, "J");
            if matrixelem::matrix_element_closed_form(&basis, &pert, nu - l, nu).is_some()
                && scale > 0.0
            {
                env.scalar(
                    format!("closed_form_deviation_l{l}"),
                    (q - beta).abs() / scale,
                    "1",
                );
            }
        }
        table.push(vec![l as f64, beta, q, nodes]);
    }
    if nu > NU_MAX {
        env.note(format!("quadrature cross-check skipped above ν = {NU_MAX}"));
    }
    Ok(table)
}
