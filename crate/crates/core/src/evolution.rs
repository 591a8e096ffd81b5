//! Split-step spectral integration of the amplitude equations
//!
//! ```text
//! i(μ/l) ∂Ψ/∂t = −(μ/l)² ∂²Ψ/∂x² + μΩ Ψ,   l = 1, 2, …
//! ```
//!
//! on a periodic 1-D grid. Divided through by μ/l the equation reads
//! ∂Ψ/∂t = −i[−(μ/l)∂²/∂x² + lΩ]Ψ, so a plane wave e^{i(kx − ωt)} obeys
//! ω = (μ/l)k² + lΩ. There is no ½ on the kinetic term.
//!
//! Each Strang step applies half a potential phase e^{−ilΩΔt/2}, the full
//! kinetic phase e^{−i(μ/l)k²Δt} in Fourier space, and another half
//! potential phase. Every factor is unimodular, so the discrete L² norm is
//! conserved up to FFT round-off.

use crate::error::{Error, Result};
use crate::par::{map_slice, Exec};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::TAU;
use std::sync::Arc;

/// Gyrofrequency over the grid.
#[derive(Debug, Clone, PartialEq)]
pub enum OmegaProfile {
    Constant(f64),
    /// One value per grid cell. Not part of the constant-field model; meant
    /// for obstacles and for exercising the splitting error.
    PerCell(Vec<f64>),
}

impl OmegaProfile {
    fn at(&self, i: usize) -> f64 {
        match self {
            OmegaProfile::Constant(w) => *w,
            OmegaProfile::PerCell(v) => v[i],
        }
    }
}

/// Amplitude Ψ(l) sampled on a uniform periodic grid over `[0, domain_length)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveField {
    pub samples: Vec<Complex64>,
    pub domain_length: f64,
    pub mode: u32,
    pub gyroaction: f64,
    pub omega: OmegaProfile,
}

impl WaveField {
    pub fn new(
        samples: Vec<Complex64>,
        domain_length: f64,
        mode: u32,
        gyroaction: f64,
        omega: OmegaProfile,
    ) -> Result<Self> {
        let f = WaveField {
            samples,
            domain_length,
            mode,
            gyroaction,
            omega,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.samples.len();
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::config(format!(
                "grid size must be a power of two ≥ 2, got {n}"
            )));
        }
        if !(self.domain_length.is_finite() && self.domain_length > 0.0) {
            return Err(Error::config(format!(
                "domain length must be positive, got {}",
                self.domain_length
            )));
        }
        if self.mode == 0 {
            return Err(Error::config("mode number l must be at least 1"));
        }
        if !(self.gyroaction.is_finite() && self.gyroaction > 0.0) {
            return Err(Error::config(format!(
                "gyroaction must be positive, got {}",
                self.gyroaction
            )));
        }
        match &self.omega {
            OmegaProfile::Constant(w) if !w.is_finite() => {
                return Err(Error::config("gyrofrequency must be finite"))
            }
            OmegaProfile::PerCell(v) if v.len() != n => {
                return Err(Error::config(format!(
                    "per-cell gyrofrequency has {} entries for {n} cells",
                    v.len()
                )))
            }
            OmegaProfile::PerCell(v) if v.iter().any(|w| !w.is_finite()) => {
                return Err(Error::config("gyrofrequency must be finite"))
            }
            _ => {}
        }
        if self
            .samples
            .iter()
            .any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::config("field samples must be finite"));
        }
        Ok(())
    }

    /// Plane wave e^{ikx} with `k = 2π·index/L`, so it is periodic on the grid.
    pub fn plane_wave(
        points: usize,
        domain_length: f64,
        index: i64,
        mode: u32,
        gyroaction: f64,
        omega: OmegaProfile,
    ) -> Result<Self> {
        let k = TAU * index as f64 / domain_length;
        let dx = domain_length / points as f64;
        let samples = (0..points)
            .map(|i| Complex64::from_polar(1.0, k * i as f64 * dx))
            .collect();
        Self::new(samples, domain_length, mode, gyroaction, omega)
    }

    /// Gaussian packet exp(−(x − x₀)²/(4σ²) + ik₀x), σ the position spread.
    #[allow(clippy::too_many_arguments)]
    pub fn gaussian_packet(
        points: usize,
        domain_length: f64,
        center: f64,
        width: f64,
        wave_number: f64,
        mode: u32,
        gyroaction: f64,
        omega: OmegaProfile,
    ) -> Result<Self> {
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::config(format!(
                "packet width must be positive, got {width}"
            )));
        }
        let dx = domain_length / points as f64;
        let samples = (0..points)
            .map(|i| {
                let x = i as f64 * dx;
                let d = x - center;
                Complex64::from_polar((-d * d / (4.0 * width * width)).exp(), wave_number * x)
            })
            .collect();
        Self::new(samples, domain_length, mode, gyroaction, omega)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        self.domain_length / self.samples.len() as f64
    }

    pub fn positions(&self) -> Vec<f64> {
        let dx = self.spacing();
        (0..self.len()).map(|i| i as f64 * dx).collect()
    }

    /// Discrete L² norm √(Σ|Ψ|² Δx).
    pub fn norm(&self) -> f64 {
        (self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.spacing()).sqrt()
    }

    /// Mean position under |Ψ|². Meaningful while the packet stays clear of
    /// the periodic boundary.
    pub fn centroid(&self) -> f64 {
        let dx = self.spacing();
        let (num, den) = self
            .samples
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(n, d), (i, z)| {
                let p = z.norm_sqr();
                (n + p * i as f64 * dx, d + p)
            });
        num / den
    }

    /// Angular wave numbers of the FFT bins in standard order.
    pub fn wave_numbers(&self) -> Vec<f64> {
        let n = self.len();
        let dk = TAU / self.domain_length;
        (0..n)
            .map(|j| {
                let j = j as i64;
                let signed = if j < (n / 2) as i64 { j } else { j - n as i64 };
                signed as f64 * dk
            })
            .collect()
    }
}

/// Time step and number of steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionParams {
    pub time_step: f64,
    pub step_count: usize,
    /// Disables the kinetic factor; the potential phase alone remains.
    pub include_kinetic: bool,
}

impl EvolutionParams {
    pub fn new(time_step: f64, step_count: usize) -> Result<Self> {
        if !(time_step.is_finite() && time_step > 0.0) {
            return Err(Error::config(format!(
                "time step must be positive, got {time_step}"
            )));
        }
        if step_count == 0 {
            return Err(Error::config("step count must be positive"));
        }
        Ok(EvolutionParams {
            time_step,
            step_count,
            include_kinetic: true,
        })
    }

    pub fn without_kinetic(mut self) -> Self {
        self.include_kinetic = false;
        self
    }

    /// Δt·μ/(l·Δx²). The scheme is unitary for any value; above 1 the
    /// highest grid modes rotate by more than a radian per step.
    pub fn accuracy_ratio(&self, field: &WaveField) -> f64 {
        let dx = field.spacing();
        self.time_step * field.gyroaction / (field.mode as f64 * dx * dx)
    }
}

/// Precomputed phase factors for one field layout and time step.
pub struct Propagator {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    half_potential: Vec<Complex64>,
    kinetic: Option<Vec<Complex64>>,
    scratch: Vec<Complex64>,
}

impl Propagator {
    pub fn new(field: &WaveField, params: &EvolutionParams) -> Result<Self> {
        field.validate()?;
        let n = field.len();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let l = field.mode as f64;
        let dt = params.time_step;
        let half_potential = (0..n)
            .map(|i| Complex64::from_polar(1.0, -l * field.omega.at(i) * dt / 2.0))
            .collect();
        let kinetic = params.include_kinetic.then(|| {
            let coeff = field.gyroaction / l;
            let norm = 1.0 / n as f64;
            field
                .wave_numbers()
                .into_iter()
                .map(|k| Complex64::from_polar(norm, -coeff * k * k * dt))
                .collect()
        });
        let scratch_len = forward
            .get_inplace_scratch_len()
            .max(inverse.get_inplace_scratch_len());
        Ok(Propagator {
            forward,
            inverse,
            half_potential,
            kinetic,
            scratch: vec![Complex64::new(0.0, 0.0); scratch_len],
        })
    }

    /// Advances the samples by one Strang step.
    pub fn step(&mut self, samples: &mut [Complex64]) {
        for (z, p) in samples.iter_mut().zip(&self.half_potential) {
            *z *= p;
        }
        if let Some(kin) = &self.kinetic {
            self.forward
                .process_with_scratch(samples, &mut self.scratch);
            for (z, p) in samples.iter_mut().zip(kin) {
                *z *= p;
            }
            self.inverse
                .process_with_scratch(samples, &mut self.scratch);
        }
        for (z, p) in samples.iter_mut().zip(&self.half_potential) {
            *z *= p;
        }
    }
}

/// Evolves a copy of `field` by `params.step_count` steps.
pub fn evolve(field: &WaveField, params: &EvolutionParams) -> Result<WaveField> {
    let mut out = field.clone();
    let mut prop = Propagator::new(field, params)?;
    for _ in 0..params.step_count {
        prop.step(&mut out.samples);
    }
    Ok(out)
}

/// Evolves independent fields (typically several modes l). Each field is
/// stepped sequentially; distinct fields may run in parallel.
pub fn evolve_modes(
    fields: &[WaveField],
    params: &EvolutionParams,
    exec: Exec,
) -> Result<Vec<WaveField>> {
    map_slice(fields, exec, |f| evolve(f, params))
        .into_iter()
        .collect()
}

/// Plane-wave frequency ω = (μ/l)k² + lΩ.
pub fn dispersion_check(gyroaction: f64, omega: f64, l: u32, k: f64) -> Result<f64> {
    if l == 0 {
        return Err(Error::domain("mode number l must be at least 1"));
    }
    let lf = l as f64;
    Ok(gyroaction / lf * k * k + lf * omega)
}

/// Total phase accumulated by a single-mode field over the evolution,
/// obtained by unwrapping the per-step phase of the sample at `probe`.
/// Requires the per-step rotation to stay below π.
pub fn tracked_phase(field: &WaveField, params: &EvolutionParams, probe: usize) -> Result<f64> {
    let mut prop = Propagator::new(field, params)?;
    let mut samples = field.samples.clone();
    let mut total = 0.0;
    let mut prev = samples[probe];
    for _ in 0..params.step_count {
        prop.step(&mut samples);
        total += (samples[probe] / prev).arg();
        prev = samples[probe];
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn packet(l: u32) -> WaveField {
        WaveField::gaussian_packet(
            512,
            40.0,
            20.0,
            1.0,
            2.0,
            l,
            1.0,
            OmegaProfile::Constant(0.3),
        )
        .unwrap()
    }

    #[test]
    fn rejects_bad_grid() {
        let r = WaveField::new(
            vec![Complex64::new(1.0, 0.0); 100],
            1.0,
            1,
            1.0,
            OmegaProfile::Constant(1.0),
        );
        assert!(matches!(r, Err(Error::Config(_))));
    }

    #[test]
    fn zero_field_stays_zero() {
        let f = WaveField::new(
            vec![Complex64::new(0.0, 0.0); 64],
            1.0,
            1,
            1.0,
            OmegaProfile::Constant(1.0),
        )
        .unwrap();
        let out = evolve(&f, &EvolutionParams::new(0.01, 50).unwrap()).unwrap();
        assert!(out.samples.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn plane_wave_phase_matches_dispersion() {
        let (mu, omega, l) = (0.7, 2.0, 2);
        let f = WaveField::plane_wave(64, 10.0, 3, l, mu, OmegaProfile::Constant(omega)).unwrap();
        let k = TAU * 3.0 / 10.0;
        let params = EvolutionParams::new(0.01, 400).unwrap();
        let phase = tracked_phase(&f, &params, 5).unwrap();
        let w = dispersion_check(mu, omega, l, k).unwrap();
        assert_relative_eq!(-phase, w * 4.0, max_relative = 1e-9);
    }

    #[test]
    fn norm_conserved() {
        let f = packet(1);
        let out = evolve(&f, &EvolutionParams::new(0.01, 1000).unwrap()).unwrap();
        assert!((out.norm() - f.norm()).abs() / f.norm() < 1e-12);
    }

    #[test]
    fn potential_only_is_global_phase() {
        let f = packet(3);
        let out = evolve(
            &f,
            &EvolutionParams::new(0.05, 17).unwrap().without_kinetic(),
        )
        .unwrap();
        // unimodular factors; only rounding of the complex products remains
        for (a, b) in f.samples.iter().zip(&out.samples) {
            assert!((a.norm() - b.norm()).abs() <= 1e-14 * a.norm());
        }
    }

    #[test]
    fn modes_evolve_independently() {
        let fields = vec![packet(1), packet(2)];
        let params = EvolutionParams::new(0.01, 200).unwrap();
        let joint = evolve_modes(&fields, &params, Exec::default()).unwrap();
        for (f, j) in fields.iter().zip(&joint) {
            assert_eq!(&evolve(f, &params).unwrap(), j);
        }
    }

    #[test]
    fn constant_field_plane_wave_is_exact_for_any_step() {
        let (mu, omega) = (1.3, 0.9);
        let f = WaveField::plane_wave(32, 8.0, 2, 1, mu, OmegaProfile::Constant(omega)).unwrap();
        let k = TAU * 2.0 / 8.0;
        let w = dispersion_check(mu, omega, 1, k).unwrap();
        for dt in [0.01, 0.05, 0.2] {
            let steps = (2.0 / dt) as usize;
            let out = evolve(&f, &EvolutionParams::new(dt, steps).unwrap()).unwrap();
            let t = dt * steps as f64;
            for (a, b) in f.samples.iter().zip(&out.samples) {
                let exact = a * Complex64::from_polar(1.0, -w * t);
                assert!((b - exact).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn splitting_error_is_second_order() {
        let n = 256;
        let profile = (0..n)
            .map(|i| 0.3 + 2.0 * (TAU * i as f64 / n as f64).cos())
            .collect();
        let f = WaveField::gaussian_packet(
            n,
            40.0,
            20.0,
            1.0,
            2.0,
            1,
            1.0,
            OmegaProfile::PerCell(profile),
        )
        .unwrap();
        let run = |steps: usize| {
            evolve(
                &f,
                &EvolutionParams::new(1.0 / steps as f64, steps).unwrap(),
            )
            .unwrap()
        };
        let reference = run(4096);
        let err = |steps: usize| {
            run(steps)
                .samples
                .iter()
                .zip(&reference.samples)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt()
        };
        let ratio = err(32) / err(64);
        assert!((ratio.log2() - 2.0).abs() < 0.1, "order {}", ratio.log2());
    }

    #[test]
    fn dispersion_formula() {
        assert_eq!(dispersion_check(3.0, 5.0, 2, 0.0).unwrap(), 10.0);
        let a = dispersion_check(4.0, 1.0, 1, 2.0).unwrap();
        let b = dispersion_check(4.0, 1.0, 2, 2.0).unwrap();
        assert_eq!(a, 16.0 + 1.0);
        assert_eq!(b, 8.0 + 2.0);
        assert!(dispersion_check(1.0, 1.0, 0, 1.0).is_err());
    }
}
