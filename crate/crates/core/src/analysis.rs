//! Energy-sweep transmission and fringe analysis.
//!
//! A beam of translational energy `E` crossing a path of length `L` picks
//! up the macroscopic phase `l·k(E)·L` with `k(E) = ω_eff / v(E)`. The
//! detector model is the two-path form with unit couplings,
//! `Σ_L w_L Σ_l |a_l|² [1 + cos(l·k(E)·L)]`, the simplest signal that
//! shows discrete bands, 1/L band spacing and beats between two nearly
//! equal lengths. Several lengths add as independent contributions.
//!
//! Because `v` depends on `E` the fringes are chirped, so spacings are read
//! from adjacent peaks rather than from a global spectrum.

use crate::error::{Error, Result};
use crate::interference::HarmonicMixture;
use crate::par::{map_slice, try_map_range, Exec};
use crate::physcore::{BeamSpec, InternalSystem, PhysicalConstants};

/// Minimum number of energy samples in a sweep.
pub const MIN_SAMPLES: usize = 16;

/// One flight path from the gun, with its weight in the detected signal.
#[derive(Debug, Clone, PartialEq)]
pub struct PathLength {
    pub label: String,
    pub length: f64,
    pub weight: f64,
}

impl PathLength {
    pub fn new(label: impl Into<String>, length: f64) -> Self {
        PathLength {
            label: label.into(),
            length,
            weight: 1.0,
        }
    }
}

/// Energy sweep over translational energies `[energy_min, energy_max]` (J).
///
/// The beam template supplies the centre-of-mass mass and the central
/// internal level; its total energy is replaced by `E_int(n) + E` at every
/// sample.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub energy_min: f64,
    pub energy_max: f64,
    pub sample_count: usize,
    pub lengths: Vec<PathLength>,
    pub system: InternalSystem,
    pub beam: BeamSpec,
    pub mixture: HarmonicMixture,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.energy_min.is_finite() && self.energy_max.is_finite())
            || self.energy_min >= self.energy_max
        {
            return Err(Error::config(format!(
                "sweep needs energy_min < energy_max, got [{}, {}]",
                self.energy_min, self.energy_max
            )));
        }
        if self.sample_count < MIN_SAMPLES {
            return Err(Error::config(format!(
                "sweep needs at least {MIN_SAMPLES} samples, got {}",
                self.sample_count
            )));
        }
        if self.lengths.is_empty() {
            return Err(Error::config("sweep needs at least one path length"));
        }
        for p in &self.lengths {
            if !(p.length.is_finite() && p.length > 0.0) {
                return Err(Error::config(format!(
                    "path '{}' has non-positive length {}",
                    p.label, p.length
                )));
            }
            if !p.weight.is_finite() {
                return Err(Error::config(format!(
                    "path '{}' has a non-finite weight",
                    p.label
                )));
            }
        }
        self.system.validate()
    }

    /// Sampled translational energies, evenly spaced and inclusive.
    pub fn energies(&self) -> Vec<f64> {
        let step = (self.energy_max - self.energy_min) / (self.sample_count - 1) as f64;
        (0..self.sample_count)
            .map(|i| self.energy_min + step * i as f64)
            .collect()
    }

    /// Copy with a single unit-weight path of length `length`.
    pub fn with_single_length(&self, length: f64) -> Self {
        SweepConfig {
            lengths: vec![PathLength::new("L", length)],
            ..self.clone()
        }
    }
}

/// Detector signal against translational energy.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub abscissa: Vec<f64>,
    pub signal: Vec<f64>,
    pub config: SweepConfig,
}

/// Peaks of a spectrum and the spacings between them.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PeakReport {
    pub peak_positions: Vec<f64>,
    pub peak_heights: Vec<f64>,
    pub prominences: Vec<f64>,
    pub spacings: Vec<f64>,
    pub mean_spacing: Option<f64>,
    /// Median adjacent-peak spacing, filled by [`beat_envelope`].
    pub carrier_period: Option<f64>,
    /// Spacing between zeros of the peak-height envelope.
    pub beat_period: Option<f64>,
    /// Full modulation cycle: the carrier inverts at every envelope zero,
    /// so one cycle spans two zero-to-zero intervals.
    pub envelope_period: Option<f64>,
    /// Median over envelope intervals of envelope_period / carrier_period,
    /// both measured on the same interval.
    pub period_ratio: Option<f64>,
}

/// Signal at wave number `k` for the given paths and harmonics.
pub fn signal_at(k: f64, lengths: &[PathLength], mixture: &HarmonicMixture) -> f64 {
    lengths
        .iter()
        .map(|p| {
            p.weight
                * mixture
                    .entries()
                    .iter()
                    .map(|&(l, w)| w.norm_sqr() * (1.0 + (l as f64 * k * p.length).cos()))
                    .sum::<f64>()
        })
        .sum()
}

/// Macroscopic wave number ω_eff/v for translational energy `energy`.
pub fn wave_number_at(config: &SweepConfig, energy: f64, c: &PhysicalConstants) -> Result<f64> {
    let n = config.beam.central_quantum_number;
    let beam = BeamSpec::from_kinetic_energy(&config.system, energy, config.beam.com_mass, n, c)?;
    let v = beam.velocity(&config.system, c)?;
    Ok(config.system.effective_frequency(n as f64, c)? / v)
}

pub fn transmission_sweep(config: &SweepConfig) -> Result<Spectrum> {
    transmission_sweep_with(config, &PhysicalConstants::CODATA, Exec::default())
}

pub fn transmission_sweep_with(
    config: &SweepConfig,
    c: &PhysicalConstants,
    exec: Exec,
) -> Result<Spectrum> {
    config.validate()?;
    let energies = config.energies();
    let signal = try_map_range(energies.len(), exec, |i| {
        let e = energies[i];
        let k = wave_number_at(config, e, c).map_err(|err| match err {
            Error::Domain(_) | Error::Evanescent { .. } => Error::Domain(format!(
                "sample {i} at E = {e:e} J does not propagate: {err}"
            )),
            other => other,
        })?;
        Ok(signal_at(k, &config.lengths, &config.mixture))
    })?;
    Ok(Spectrum {
        abscissa: energies,
        signal,
        config: config.clone(),
    })
}

/// A local maximum with its prominence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub index: usize,
    pub position: f64,
    pub height: f64,
    pub prominence: f64,
}

/// Sparse table for O(1) range minima.
struct RangeMin {
    levels: Vec<Vec<f64>>,
}

impl RangeMin {
    fn new(y: &[f64]) -> Self {
        let mut levels = vec![y.to_vec()];
        let mut width = 1;
        while 2 * width <= y.len() {
            let prev = levels.last().expect("at least one level");
            let next = (0..=y.len() - 2 * width)
                .map(|i| prev[i].min(prev[i + width]))
                .collect();
            levels.push(next);
            width *= 2;
        }
        RangeMin { levels }
    }

    /// Minimum over `lo..=hi`.
    fn query(&self, lo: usize, hi: usize) -> f64 {
        let span = hi - lo + 1;
        let level = (usize::BITS - 1 - span.leading_zeros()) as usize;
        let w = 1 << level;
        self.levels[level][lo].min(self.levels[level][hi + 1 - w])
    }
}

/// Strict local maxima (flat tops count once, at their middle) whose
/// topographic prominence is at least `min_prominence`. Positions are
/// refined by a parabola through the three samples around each maximum.
pub fn find_peaks(x: &[f64], y: &[f64], min_prominence: f64) -> Vec<Peak> {
    let n = y.len();
    if n < 3 || x.len() != n {
        return Vec::new();
    }
    // candidate maxima, plateaus collapsed to their middle sample
    let mut candidates = Vec::new();
    let mut i = 1;
    while i < n - 1 {
        if y[i] > y[i - 1] {
            let mut j = i;
            while j + 1 < n && y[j + 1] == y[i] {
                j += 1;
            }
            if j + 1 < n && y[j + 1] < y[i] {
                candidates.push((i + j) / 2);
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    if candidates.is_empty() {
        return Vec::new();
    }

    // nearest strictly higher sample on either side
    let mut left_higher = vec![None; n];
    let mut stack: Vec<usize> = Vec::new();
    for k in 0..n {
        while let Some(&top) = stack.last() {
            if y[top] <= y[k] {
                stack.pop();
            } else {
                break;
            }
        }
        left_higher[k] = stack.last().copied();
        stack.push(k);
    }
    let mut right_higher = vec![None; n];
    stack.clear();
    for k in (0..n).rev() {
        while let Some(&top) = stack.last() {
            if y[top] <= y[k] {
                stack.pop();
            } else {
                break;
            }
        }
        right_higher[k] = stack.last().copied();
        stack.push(k);
    }

    let rmq = RangeMin::new(y);
    candidates
        .into_iter()
        .filter_map(|p| {
            let lo = left_higher[p].map_or(0, |h| h + 1);
            let hi = right_higher[p].map_or(n - 1, |h| h - 1);
            let left_base = rmq.query(lo, p);
            let right_base = rmq.query(p, hi);
            let prominence = y[p] - left_base.max(right_base);
            (prominence >= min_prominence).then(|| {
                let (position, height) = refine(x, y, p);
                Peak {
                    index: p,
                    position,
                    height,
                    prominence,
                }
            })
        })
        .collect()
}

fn refine(x: &[f64], y: &[f64], p: usize) -> (f64, f64) {
    let (ym, y0, yp) = (y[p - 1], y[p], y[p + 1]);
    let denom = ym - 2.0 * y0 + yp;
    if denom >= 0.0 {
        return (x[p], y0);
    }
    let offset = 0.5 * (ym - yp) / denom;
    if offset.abs() > 0.5 {
        return (x[p], y0);
    }
    let h = if offset >= 0.0 {
        x[p + 1] - x[p]
    } else {
        x[p] - x[p - 1]
    };
    (x[p] + offset * h, y0 - 0.25 * (ym - yp) * offset)
}

fn spacings_of(positions: &[f64]) -> Vec<f64> {
    positions.windows(2).map(|w| w[1] - w[0]).collect()
}

fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(|a, b| a.total_cmp(b));
    let m = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[m]
    } else {
        0.5 * (values[m - 1] + values[m])
    })
}

fn report_from(peaks: &[Peak]) -> PeakReport {
    let peak_positions: Vec<f64> = peaks.iter().map(|p| p.position).collect();
    let spacings = spacings_of(&peak_positions);
    let mean_spacing = (peak_positions.len() >= 2).then(|| {
        (peak_positions[peak_positions.len() - 1] - peak_positions[0])
            / (peak_positions.len() - 1) as f64
    });
    PeakReport {
        peak_heights: peaks.iter().map(|p| p.height).collect(),
        prominences: peaks.iter().map(|p| p.prominence).collect(),
        peak_positions,
        spacings,
        mean_spacing,
        ..PeakReport::default()
    }
}

/// Peaks of a spectrum with at least `min_prominence`.
pub fn detect_peaks(spectrum: &Spectrum, min_prominence: f64) -> Result<PeakReport> {
    if !(min_prominence.is_finite() && min_prominence > 0.0) {
        return Err(Error::domain(format!(
            "minimum prominence must be positive, got {min_prominence}"
        )));
    }
    let peaks = find_peaks(&spectrum.abscissa, &spectrum.signal, min_prominence);
    Ok(report_from(&peaks))
}

/// Band spacing against flight length, with the fitted exponent `p` of
/// spacing ∝ Lᵖ.
#[derive(Debug, Clone, PartialEq)]
pub struct LengthScaling {
    pub points: Vec<(f64, f64)>,
    /// `None` when all lengths coincide.
    pub exponent: Option<f64>,
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::domain("slope needs at least two points"));
    }
    if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(Error::domain("log-log fit needs positive coordinates"));
    }
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), &(x, y)| (a + x.ln(), b + y.ln()));
    let (mx, my) = (sx / n, sy / n);
    let (num, den) = points.iter().fold((0.0, 0.0), |(num, den), &(x, y)| {
        let dx = x.ln() - mx;
        (num + dx * (y.ln() - my), den + dx * dx)
    });
    if den == 0.0 {
        return Err(Error::domain("log-log fit needs distinct abscissae"));
    }
    Ok(num / den)
}

fn default_prominence(signal: &[f64]) -> f64 {
    let (lo, hi) = signal
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
            (a.min(v), b.max(v))
        });
    ((hi - lo) * 1e-3).max(f64::MIN_POSITIVE)
}

/// Sweeps the base configuration once per length and reports the mean
/// band spacing of each.
pub fn inverse_length_check(base: &SweepConfig, lengths: &[f64]) -> Result<LengthScaling> {
    inverse_length_check_with(base, lengths, &PhysicalConstants::CODATA, Exec::default())
}

pub fn inverse_length_check_with(
    base: &SweepConfig,
    lengths: &[f64],
    c: &PhysicalConstants,
    exec: Exec,
) -> Result<LengthScaling> {
    if lengths.len() < 2 {
        return Err(Error::config("length scaling needs at least two lengths"));
    }
    // lengths run in parallel, so each sweep stays sequential
    let points = map_slice(lengths, exec, |&l| -> Result<(f64, f64)> {
        let spec = transmission_sweep_with(&base.with_single_length(l), c, Exec::Sequential)?;
        let report = detect_peaks(&spec, default_prominence(&spec.signal))?;
        let spacing = report.mean_spacing.ok_or_else(|| {
            Error::domain(format!(
                "fewer than two bands for L = {l} m; widen the sweep"
            ))
        })?;
        Ok((l, spacing))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let exponent = log_log_slope(&points).ok();
    Ok(LengthScaling { points, exponent })
}

/// Relative spread of the peak heights below which the envelope counts as flat.
pub const FLAT_ENVELOPE: f64 = 1e-3;

/// Carrier peaks plus the slow envelope of their heights.
///
/// Envelope zeros are the minima of the peak-height sequence. The
/// zero-to-zero spacing is the beat period; the carrier changes sign at each
/// zero, so the modulation period is twice that. `envelope_period` stays
/// `None` if the heights are flat or fewer than two zeros fall in the sweep.
pub fn beat_envelope(spectrum: &Spectrum) -> Result<PeakReport> {
    let peaks = find_peaks(
        &spectrum.abscissa,
        &spectrum.signal,
        default_prominence(&spectrum.signal) * 1e-3,
    );
    let mut report = report_from(&peaks);
    report.carrier_period = median(&mut report.spacings.clone());
    if peaks.len() < 5 {
        return Ok(report);
    }
    let heights = &report.peak_heights;
    let (lo, hi) = heights
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
            (a.min(v), b.max(v))
        });
    if (hi - lo) <= FLAT_ENVELOPE * hi.abs() {
        return Ok(report);
    }
    // zeros of the envelope are maxima of the negated heights
    let negated: Vec<f64> = heights.iter().map(|h| -h).collect();
    let zeros: Vec<f64> = find_peaks(&report.peak_positions, &negated, 0.25 * (hi - lo))
        .into_iter()
        .map(|p| p.position)
        .collect();
    if zeros.len() < 2 {
        return Ok(report);
    }
    let mut beats = spacings_of(&zeros);
    let mut ratios: Vec<f64> = zeros
        .windows(2)
        .filter_map(|w| {
            let mut inside: Vec<f64> = report
                .peak_positions
                .windows(2)
                .filter(|p| p[0] >= w[0] && p[1] <= w[1])
                .map(|p| p[1] - p[0])
                .collect();
            let carrier = median(&mut inside)?;
            Some(2.0 * (w[1] - w[0]) / carrier)
        })
        .collect();
    report.beat_period = median(&mut beats);
    report.envelope_period = report.beat_period.map(|b| 2.0 * b);
    report.period_ratio = median(&mut ratios);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physcore::units;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    const C: PhysicalConstants = PhysicalConstants::CODATA;

    fn electron_sweep(
        lengths: Vec<PathLength>,
        e_lo: f64,
        e_hi: f64,
        samples: usize,
    ) -> SweepConfig {
        let system = InternalSystem::landau_from_gauss(100.0).unwrap();
        let beam = BeamSpec::from_kinetic_energy(
            &system,
            units::ev_to_joule(e_lo),
            C.electron_mass,
            0,
            &C,
        )
        .unwrap();
        SweepConfig {
            energy_min: units::ev_to_joule(e_lo),
            energy_max: units::ev_to_joule(e_hi),
            sample_count: samples,
            lengths,
            system,
            beam,
            mixture: HarmonicMixture::fundamental(),
        }
    }

    fn synthetic(x: Vec<f64>, y: Vec<f64>) -> Spectrum {
        Spectrum {
            abscissa: x,
            signal: y,
            config: electron_sweep(vec![PathLength::new("L", 1.0)], 100.0, 200.0, 16),
        }
    }

    #[test]
    fn cosine_five_periods() {
        let n = 1001;
        let x: Vec<f64> = (0..n)
            .map(|i| 10.0 * PI * i as f64 / (n - 1) as f64)
            .collect();
        let y: Vec<f64> = x.iter().map(|t| (t - PI).cos()).collect();
        let step = x[1] - x[0];
        let r = detect_peaks(&synthetic(x, y), 0.1).unwrap();
        assert_eq!(r.peak_positions.len(), 5);
        for s in &r.spacings {
            assert!((s - 2.0 * PI).abs() < step);
        }
    }

    #[test]
    fn constant_has_no_peaks() {
        let x: Vec<f64> = (0..100).map(|i| i as f64).collect();
        let r = detect_peaks(&synthetic(x, vec![3.0; 100]), 0.1).unwrap();
        assert!(r.peak_positions.is_empty());
        assert!(r.spacings.is_empty());
        assert!(r.mean_spacing.is_none());
    }

    #[test]
    fn single_peak_has_no_spacing() {
        let x: Vec<f64> = (0..101).map(|i| i as f64 / 100.0).collect();
        let y: Vec<f64> = x
            .iter()
            .map(|t| (-(t - 0.5) * (t - 0.5) * 50.0).exp())
            .collect();
        let r = detect_peaks(&synthetic(x, y), 0.1).unwrap();
        assert_eq!(r.peak_positions.len(), 1);
        assert!(r.spacings.is_empty());
    }

    #[test]
    fn prominence_filters_ripples() {
        let x: Vec<f64> = (0..2001).map(|i| i as f64 * 0.01).collect();
        let y: Vec<f64> = x
            .iter()
            .map(|t| t.sin() + 0.01 * (40.0 * t).sin())
            .collect();
        let all = find_peaks(&x, &y, 1e-9).len();
        let big = find_peaks(&x, &y, 0.5).len();
        assert!(all > big);
        assert_eq!(big, 3);
    }

    #[test]
    fn plateau_counts_once() {
        let x: Vec<f64> = (0..7).map(|i| i as f64).collect();
        let y = vec![0.0, 1.0, 2.0, 2.0, 2.0, 1.0, 0.0];
        let p = find_peaks(&x, &y, 0.5);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].index, 3);
        assert_eq!(p[0].prominence, 2.0);
    }

    #[test]
    fn rejects_bad_prominence() {
        let s = synthetic(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 0.0]);
        assert!(detect_peaks(&s, 0.0).is_err());
    }

    #[test]
    fn flat_dispersion_is_periodic_in_k() {
        let lengths = vec![PathLength::new("L", 0.25)];
        let mix = HarmonicMixture::fundamental();
        let period = 2.0 * PI / 0.25;
        for i in 0..50 {
            let k = 0.37 * i as f64;
            assert!(
                (signal_at(k, &lengths, &mix) - signal_at(k + period, &lengths, &mix)).abs()
                    < 1e-12
            );
        }
    }

    #[test]
    fn electron_band_spacing_matches_analytic() {
        let cfg = electron_sweep(vec![PathLength::new("Lp", 0.3)], 400.0, 600.0, 20_001);
        let spec = transmission_sweep(&cfg).unwrap();
        let r = detect_peaks(&spec, 0.1).unwrap();
        assert_eq!(r.peak_positions.len(), 2);
        let spacing = r.spacings[0];
        let mid = 0.5 * (r.peak_positions[0] + r.peak_positions[1]);
        let omega = crate::physcore::gyrofrequency(100.0).unwrap();
        let v = (2.0 * mid / C.electron_mass).sqrt();
        let analytic = 4.0 * PI * mid * v / (omega * 0.3);
        assert!((spacing - analytic).abs() / analytic < 0.05);
    }

    #[test]
    fn sweep_rejects_bad_config() {
        let mut cfg = electron_sweep(vec![PathLength::new("L", 1.0)], 400.0, 600.0, 100);
        cfg.sample_count = 8;
        assert!(matches!(transmission_sweep(&cfg), Err(Error::Config(_))));
        let mut cfg = electron_sweep(vec![PathLength::new("L", 1.0)], 400.0, 600.0, 100);
        cfg.energy_min = -1e-17;
        let err = transmission_sweep(&cfg).unwrap_err();
        assert!(
            matches!(err, Error::Domain(ref m) if m.contains("sample 0")),
            "{err}"
        );
    }

    #[test]
    fn two_lengths_follow_sum_to_product() {
        let (lp, lg) = (2.0, 1.9);
        let cfg = electron_sweep(
            vec![PathLength::new("Lp", lp), PathLength::new("Lg", lg)],
            300.0,
            700.0,
            4001,
        );
        let spec = transmission_sweep(&cfg).unwrap();
        let omega = crate::physcore::gyrofrequency(100.0).unwrap();
        for (e, s) in spec.abscissa.iter().zip(&spec.signal) {
            let k = omega / (2.0 * e / C.electron_mass).sqrt();
            let oracle = 2.0 + 2.0 * (k * (lp + lg) / 2.0).cos() * (k * (lp - lg) / 2.0).cos();
            assert!((s - oracle).abs() < 1e-12);
        }
    }

    #[test]
    fn identical_lengths_identical_spacing() {
        let cfg = electron_sweep(vec![PathLength::new("L", 1.0)], 300.0, 700.0, 4001);
        let r = inverse_length_check(&cfg, &[2.0, 2.0]).unwrap();
        assert_eq!(r.points[0].1, r.points[1].1);
        assert!(r.exponent.is_none());
    }

    #[test]
    fn doubling_length_halves_spacing() {
        let cfg = electron_sweep(vec![PathLength::new("L", 1.0)], 300.0, 700.0, 40_001);
        let r = inverse_length_check(&cfg, &[2.0, 4.0]).unwrap();
        let ratio = r.points[0].1 / r.points[1].1;
        assert!((ratio - 2.0).abs() < 0.04, "ratio {ratio}");
    }

    #[test]
    fn slope_fit() {
        let pts: Vec<(f64, f64)> = [1.0, 2.0, 4.0, 8.0].iter().map(|&x| (x, 3.0 / x)).collect();
        assert_relative_eq!(log_log_slope(&pts).unwrap(), -1.0, max_relative = 1e-12);
        assert!(log_log_slope(&pts[..1]).is_err());
    }

    #[test]
    fn equal_lengths_have_no_beat() {
        let cfg = electron_sweep(
            vec![PathLength::new("Lp", 2.0), PathLength::new("Lg", 2.0)],
            300.0,
            700.0,
            8001,
        );
        let r = beat_envelope(&transmission_sweep(&cfg).unwrap()).unwrap();
        assert!(r.peak_positions.len() > 5);
        assert!(r.envelope_period.is_none());
    }

    #[test]
    fn halving_difference_doubles_envelope() {
        // narrow window: dE/dk ∝ k⁻³ would otherwise bias energy periods
        let period = |lg: f64| {
            let cfg = electron_sweep(
                vec![PathLength::new("Lp", 300.0), PathLength::new("Lg", lg)],
                480.0,
                520.0,
                100_001,
            );
            beat_envelope(&transmission_sweep(&cfg).unwrap())
                .unwrap()
                .envelope_period
                .unwrap()
        };
        let ratio = period(292.5) / period(285.0);
        assert!((ratio - 2.0).abs() < 0.2, "ratio {ratio}");
    }

    #[test]
    fn sweeps_are_deterministic() {
        let cfg = electron_sweep(
            vec![PathLength::new("Lp", 3.0), PathLength::new("Lg", 2.9)],
            300.0,
            700.0,
            10_001,
        );
        let a = transmission_sweep_with(&cfg, &C, Exec::Sequential).unwrap();
        let b = transmission_sweep(&cfg).unwrap();
        assert_eq!(a.signal, b.signal);
        assert_eq!(a.abscissa, b.abscissa);
    }

    #[test]
    fn synthetic_beat_recovered() {
        // carrier period 1, modulation cos(2πx/40): zeros every 20
        let x: Vec<f64> = (0..200_001).map(|i| i as f64 * 0.001).collect();
        let y: Vec<f64> = x
            .iter()
            .map(|t| 2.0 + 2.0 * (2.0 * PI * t).cos() * (2.0 * PI * t / 40.0 + 0.3).cos())
            .collect();
        let r = beat_envelope(&synthetic(x, y)).unwrap();
        let env = r.envelope_period.unwrap();
        assert!((env - 40.0).abs() / 40.0 < 0.05, "{env}");
        assert!((r.carrier_period.unwrap() - 1.0).abs() < 0.01);
    }

    #[test]
    fn spacing_converges_with_sampling() {
        let cfg = |n| electron_sweep(vec![PathLength::new("L", 0.3)], 400.0, 600.0, n);
        let omega = crate::physcore::gyrofrequency(100.0).unwrap();
        // peaks sit where ΩL/v(E) = 2πm
        let exact: Vec<f64> = [6.0, 7.0]
            .iter()
            .map(|m| {
                let v = omega * 0.3 / (2.0 * PI * m);
                0.5 * C.electron_mass * v * v
            })
            .collect();
        let exact_spacing = exact[0] - exact[1];
        let mut last = f64::INFINITY;
        for n in [64, 128, 256, 512] {
            let r = detect_peaks(&transmission_sweep(&cfg(n)).unwrap(), 0.1).unwrap();
            let err = (r.spacings[0] - exact_spacing).abs();
            assert!(err <= last);
            last = err;
        }
        assert!(last / exact_spacing < 1e-3);
    }
}
