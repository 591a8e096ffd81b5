//! Grid-scattering amplitudes and their interference.
//!
//! A grid at `X_g` with coupling `c` (the product of the normalization
//! constants at entry and exit) emits the harmonic-`l` amplitude
//! `c·β·exp(i·l·k·(X − X_g))`. Same-`l` amplitudes from different grids add
//! coherently. Different `l` end in orthogonal internal states and add in
//! intensity.

use crate::error::{Error, Result};
use crate::par::{map_slice, Exec};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// A plane of scatterers crossing the beam.
#[derive(Debug, Clone, PartialEq)]
pub struct ScattererGrid {
    pub position: f64,
    pub coupling: Complex64,
    pub label: String,
}

impl ScattererGrid {
    pub fn new(label: impl Into<String>, position: f64, coupling: Complex64) -> Self {
        ScattererGrid {
            position,
            coupling,
            label: label.into(),
        }
    }

    /// Grid with a real coupling.
    pub fn real(label: impl Into<String>, position: f64, coupling: f64) -> Self {
        Self::new(label, position, Complex64::new(coupling, 0.0))
    }
}

/// Weighted set of harmonics produced at the grids.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicMixture {
    entries: Vec<(u32, Complex64)>,
}

impl HarmonicMixture {
    pub fn new(entries: Vec<(u32, Complex64)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::config("harmonic mixture needs at least one entry"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(l, w) in &entries {
            if l == 0 {
                return Err(Error::config("mixture harmonics must be positive"));
            }
            if !(w.re.is_finite() && w.im.is_finite()) {
                return Err(Error::config(format!("weight for l = {l} is not finite")));
            }
            if !seen.insert(l) {
                return Err(Error::config(format!("harmonic l = {l} listed twice")));
            }
        }
        Ok(HarmonicMixture { entries })
    }

    /// Only the fundamental, unit weight.
    pub fn fundamental() -> Self {
        HarmonicMixture {
            entries: vec![(1, Complex64::new(1.0, 0.0))],
        }
    }

    pub fn entries(&self) -> &[(u32, Complex64)] {
        &self.entries
    }

    pub fn harmonics(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.iter().map(|&(l, _)| l)
    }
}

/// Amplitude of harmonic `l` from one grid, evaluated at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeAmplitude {
    pub value: Complex64,
    pub wave_number: f64,
    pub harmonic: u32,
    pub source: String,
}

/// c·β·exp(i·l·k·(X − X_grid)).
pub fn grid_amplitude(
    grid: &ScattererGrid,
    k: f64,
    l: u32,
    beta: Complex64,
    x: f64,
) -> ModeAmplitude {
    let kl = l as f64 * k;
    let phase = kl * (x - grid.position);
    ModeAmplitude {
        value: grid.coupling * beta * Complex64::from_polar(1.0, phase),
        wave_number: kl,
        harmonic: l,
        source: grid.label.clone(),
    }
}

/// Coherent sum of amplitudes.
pub fn superpose(amplitudes: &[ModeAmplitude]) -> Result<Complex64> {
    if amplitudes.is_empty() {
        return Err(Error::domain("nothing to superpose"));
    }
    Ok(amplitudes.iter().map(|a| a.value).sum())
}

/// Two-grid intensity
/// |β|²·(|c₁|² + |c₂|² + 2|c₁||c₂|·cos(φ − arg c₁ + arg c₂)), φ = l·k·(X₁ − X₂),
/// which is |Σ c·β·e^{ilk(X − X_g)}|² at any common probe X. Real couplings
/// give the textbook two-slit form.
pub fn two_grid_intensity(
    g1: &ScattererGrid,
    g2: &ScattererGrid,
    k: f64,
    l: u32,
    beta: Complex64,
) -> f64 {
    intensity_at_phase(g1, g2, l as f64 * k * (g1.position - g2.position), beta)
}

fn intensity_at_phase(g1: &ScattererGrid, g2: &ScattererGrid, phase: f64, beta: Complex64) -> f64 {
    let (a1, p1) = g1.coupling.to_polar();
    let (a2, p2) = g2.coupling.to_polar();
    beta.norm_sqr() * (a1 * a1 + a2 * a2 + 2.0 * a1 * a2 * (phase - p1 + p2).cos())
}

/// Incoherent sum over the mixture of |weight|²·two_grid_intensity at l·k.
pub fn mixture_intensity(
    g1: &ScattererGrid,
    g2: &ScattererGrid,
    base_k: f64,
    mixture: &HarmonicMixture,
    betas: &BTreeMap<u32, Complex64>,
) -> Result<f64> {
    mixture
        .entries()
        .iter()
        .map(|&(l, w)| {
            let beta = betas
                .get(&l)
                .ok_or_else(|| Error::config(format!("no transition amplitude for l = {l}")))?;
            Ok(w.norm_sqr() * two_grid_intensity(g1, g2, base_k, l, *beta))
        })
        .sum()
}

/// Intensity for a combined vibrational and rotational transition, with
/// wave number l_vib·k_vib + l_rot·k_rot.
pub fn rovib_intensity(
    g1: &ScattererGrid,
    g2: &ScattererGrid,
    k_vib: f64,
    k_rot: f64,
    l_vib: u32,
    l_rot: u32,
    gamma: Complex64,
) -> f64 {
    let k = l_vib as f64 * k_vib + l_rot as f64 * k_rot;
    intensity_at_phase(g1, g2, k * (g1.position - g2.position), gamma)
}

/// A sampled fringe pattern over grid separations X₁ − X₂.
#[derive(Debug, Clone, PartialEq)]
pub struct FringePattern {
    pub separation: Vec<f64>,
    pub intensity: Vec<f64>,
}

/// Evenly spaced separations from `start` to `end` inclusive.
pub fn separations(start: f64, end: f64, samples: usize) -> Result<Vec<f64>> {
    let ordered = end > start;
    if samples < 2 || !ordered {
        return Err(Error::config(format!(
            "separation range needs end > start and at least two samples, got [{start}, {end}] × {samples}"
        )));
    }
    let step = (end - start) / (samples - 1) as f64;
    Ok((0..samples).map(|i| start + step * i as f64).collect())
}

/// Evaluates `intensity(separation)` for every separation, moving grid 1
/// while grid 2 stays at its position.
pub fn sample_pattern<F>(
    g1: &ScattererGrid,
    g2: &ScattererGrid,
    seps: Vec<f64>,
    exec: Exec,
    intensity: F,
) -> FringePattern
where
    F: Fn(&ScattererGrid, &ScattererGrid) -> f64 + Sync + Send,
{
    let values = map_slice(&seps, exec, |&d| {
        let moved = ScattererGrid {
            position: g2.position + d,
            ..g1.clone()
        };
        intensity(&moved, g2)
    });
    FringePattern {
        separation: seps,
        intensity: values,
    }
}

/// Separations in `[start, end]` where l·k·(X₁ − X₂) − arg c₁ + arg c₂ is a
/// multiple of 2π, i.e. the two-grid maxima.
pub fn fringe_maxima(
    g1: &ScattererGrid,
    g2: &ScattererGrid,
    k: f64,
    l: u32,
    start: f64,
    end: f64,
) -> Vec<f64> {
    use std::f64::consts::TAU;
    let kl = l as f64 * k;
    let offset = g1.coupling.arg() - g2.coupling.arg();
    let m_lo = ((kl * start - offset) / TAU).ceil() as i64;
    let m_hi = ((kl * end - offset) / TAU).floor() as i64;
    (m_lo..=m_hi)
        .map(|m| (m as f64 * TAU + offset) / kl)
        .collect()
}
