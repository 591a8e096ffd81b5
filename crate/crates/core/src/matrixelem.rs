//! Transition matrix elements ⟨ν − l|H̃|ν⟩ between harmonic-oscillator
//! states.
//!
//! Oscillator functions are generated by the normalized three-term
//! recurrence in the scaled coordinate `y = ξ/b`, `b = √(ħ/mω)`. The
//! mantissa is renormalized every step and the exponent carried separately,
//! so `e^{-y²/2}` never underflows even at ν = 10⁴.
//!
//! Linear and quadratic perturbations use ladder-operator closed forms.
//! Everything else goes through Gauss-Hermite quadrature whose node count
//! doubles until two successive estimates agree.

use crate::error::{Error, Result};
use crate::physcore::PhysicalConstants;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

/// Largest quantum number for explicit wavefunction work.
pub const NU_MAX: u64 = 10_000;
/// Quadrature stops doubling at this many nodes.
pub const MAX_QUADRATURE_NODES: usize = 1 << 14;
/// Relative agreement between successive quadrature estimates.
pub const QUADRATURE_TOLERANCE: f64 = 1e-10;

const MIN_QUADRATURE_NODES: usize = 32;
const RESCALE_ABOVE: f64 = 1e150;

/// Scatterer perturbation H̃(ξ) acting on the oscillator coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Perturbation {
    /// `strength · ξ`, strength in J/m.
    Linear { strength: f64 },
    /// `strength · ξ²`, strength in J/m².
    Quadratic { strength: f64 },
    /// `strength · exp(−ξ²/(2·width²))`, strength in J.
    Gaussian { strength: f64, width: f64 },
}

impl Perturbation {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Perturbation::Linear { strength } | Perturbation::Quadratic { strength } => {
                finite("strength", strength)
            }
            Perturbation::Gaussian { strength, width } => {
                finite("strength", strength)?;
                if width.is_finite() && width > 0.0 {
                    Ok(())
                } else {
                    Err(Error::domain(format!(
                        "Gaussian width must be positive, got {width}"
                    )))
                }
            }
        }
    }

    /// H̃ at the physical coordinate ξ (m).
    pub fn eval(&self, xi: f64) -> f64 {
        match *self {
            Perturbation::Linear { strength } => strength * xi,
            Perturbation::Quadratic { strength } => strength * xi * xi,
            Perturbation::Gaussian { strength, width } => {
                strength * (-0.5 * (xi / width).powi(2)).exp()
            }
        }
    }

    fn has_closed_form(&self) -> bool {
        matches!(
            self,
            Perturbation::Linear { .. } | Perturbation::Quadratic { .. }
        )
    }
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be finite, got {v}")))
    }
}

/// Oscillator of mass `mass` and frequency `omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorBasis {
    pub mass: f64,
    pub omega: f64,
    pub length_scale: f64,
}

impl OscillatorBasis {
    pub fn new(mass: f64, omega: f64, c: &PhysicalConstants) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0 && omega.is_finite() && omega > 0.0) {
            return Err(Error::domain(format!(
                "oscillator needs positive mass and frequency, got m = {mass}, ω = {omega}"
            )));
        }
        Ok(OscillatorBasis {
            mass,
            omega,
            length_scale: (c.hbar() / (mass * omega)).sqrt(),
        })
    }
}

/// A value represented as `mantissa · e^exponent`.
#[derive(Debug, Clone, Copy)]
struct Scaled {
    mantissa: f64,
    exponent: f64,
}

impl Scaled {
    fn value(self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa * self.exponent.exp()
        }
    }
}

/// Normalized Hermite functions ψ_{n−1}(y), ψ_n(y) sharing one exponent.
/// ψ_n(y) = (2ⁿ n! √π)^{-1/2} H_n(y) e^{−y²/2}.
fn hermite_pair(n: usize, y: f64) -> (Scaled, Scaled) {
    let exponent0 = -0.5 * y * y - 0.25 * PI.ln();
    let mut prev = 0.0f64;
    let mut cur = 1.0f64;
    let mut exponent = exponent0;
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * y * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        let m = cur.abs().max(prev.abs());
        if m > RESCALE_ABOVE {
            prev /= m;
            cur /= m;
            exponent += m.ln();
        }
    }
    (
        Scaled {
            mantissa: prev,
            exponent,
        },
        Scaled {
            mantissa: cur,
            exponent,
        },
    )
}

/// Normalized Hermite function ψ_n(y) in the scaled coordinate.
pub fn hermite_function(n: u64, y: f64) -> Result<f64> {
    if n > NU_MAX {
        return Err(capability(n));
    }
    Ok(hermite_pair(n as usize, y).1.value())
}

fn capability(n: u64) -> Error {
    Error::Capability(format!(
        "quantum number {n} exceeds the explicit wavefunction limit {NU_MAX}; \
         use the closed-form or semiclassical path"
    ))
}

/// Normalized oscillator eigenfunction χ_ν(ξ), ξ in metres.
pub fn oscillator_wavefunction(basis: &OscillatorBasis, nu: u64, xi: f64) -> Result<f64> {
    let b = basis.length_scale;
    Ok(hermite_function(nu, xi / b)? / b.sqrt())
}

/// Gauss-Hermite rule for ∫ f(y) dy over the real line, with the Gaussian
/// weight folded into the stored weights: Σ wᵢ f(yᵢ) ≈ ∫ f(y) dy when f
/// decays like e^{−y²}. The classical weights are `weight · e^{−y²}`.
#[derive(Debug, Clone)]
pub struct GaussHermite {
    nodes: Vec<f64>,
    /// log of the weights, since they span thousands of decades for large rules
    log_weights: Vec<f64>,
}

impl GaussHermite {
    /// Builds the `n`-point rule by Newton iteration on ψ_n with the
    /// classic asymptotic starting guesses, then mirrors the positive half.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUADRATURE_NODES {
            return Err(Error::Capability(format!(
                "Gauss-Hermite order must lie in 1..={MAX_QUADRATURE_NODES}, got {n}"
            )));
        }
        let half = n.div_ceil(2);
        let nf = n as f64;
        let mut pos: Vec<f64> = Vec::with_capacity(half);
        // roots in decreasing order, largest first
        for i in 0..half {
            let mut z = match i {
                0 => (2.0 * nf + 1.0).sqrt() - 1.855_75 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
                1 => pos[0] - 1.14 * nf.powf(0.426) / pos[0],
                2 => 1.86 * pos[1] - 0.86 * pos[0],
                3 => 1.91 * pos[2] - 0.91 * pos[1],
                _ => 2.0 * pos[i - 1] - pos[i - 2],
            };
            if n % 2 == 1 && i == half - 1 {
                z = 0.0;
            }
            for _ in 0..100 {
                let (pm1, p) = hermite_pair(n, z);
                // ψ_n' = √(2n) ψ_{n−1} − y ψ_n, common exponent cancels
                let dp = (2.0 * nf).sqrt() * pm1.mantissa - z * p.mantissa;
                let step = p.mantissa / dp;
                z -= step;
                if step.abs() <= 1e-15 * z.abs().max(1.0) {
                    break;
                }
            }
            pos.push(z);
        }
        let mut nodes = Vec::with_capacity(n);
        let mut log_weights = Vec::with_capacity(n);
        for &z in pos.iter() {
            let (pm1, _) = hermite_pair(n, z);
            // w·e^{y²} = 1 / (n ψ_{n−1}(y)²)
            let lw = -(nf.ln() + 2.0 * (pm1.mantissa.abs().ln() + pm1.exponent));
            nodes.push(z);
            log_weights.push(lw);
        }
        let mirror_from = if n % 2 == 1 { half - 1 } else { half };
        let mut all_nodes: Vec<f64> = nodes[..mirror_from].iter().map(|z| -z).collect();
        let mut all_lw: Vec<f64> = log_weights[..mirror_from].to_vec();
        all_nodes.reverse();
        all_lw.reverse();
        all_nodes.extend(nodes.iter().rev());
        all_lw.extend(log_weights.iter().rev());
        // ascending order
        let mut pairs: Vec<(f64, f64)> = all_nodes.into_iter().zip(all_lw).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (nodes, log_weights) = pairs.into_iter().unzip();
        Ok(GaussHermite { nodes, log_weights })
    }

    /// Cached rule of order `n`.
    pub fn cached(n: usize) -> Result<Arc<GaussHermite>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussHermite>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(rule) = cache.lock().expect("quadrature cache poisoned").get(&n) {
            return Ok(Arc::clone(rule));
        }
        let rule = Arc::new(GaussHermite::new(n)?);
        cache
            .lock()
            .expect("quadrature cache poisoned")
            .insert(n, Arc::clone(&rule));
        Ok(rule)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Classical Gauss-Hermite weights (for the e^{−y²} weight function).
    /// Underflows to zero for the outermost nodes of large rules.
    pub fn classical_weights(&self) -> Vec<f64> {
        self.nodes
            .iter()
            .zip(&self.log_weights)
            .map(|(y, lw)| (lw - y * y).exp())
            .collect()
    }

    /// ∫ ψ_a(y) ψ_b(y) g(y) dy.
    pub fn integrate_pair<G: Fn(f64) -> f64>(&self, a: usize, b: usize, g: G) -> f64 {
        self.nodes
            .iter()
            .zip(&self.log_weights)
            .map(|(&y, &lw)| {
                let psi_a = hermite_pair(a, y).1;
                let psi_b = hermite_pair(b, y).1;
                let m = psi_a.mantissa * psi_b.mantissa;
                if m == 0.0 {
                    return 0.0;
                }
                let scale = (lw + psi_a.exponent + psi_b.exponent).exp();
                m * scale * g(y)
            })
            .sum()
    }
}

/// Outcome of the doubling quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate {
    pub value: f64,
    pub nodes: usize,
    pub converged: bool,
}

/// ⟨bra|H̃|ket⟩ by Gauss-Hermite quadrature, doubling the node count until
/// successive estimates agree to [`QUADRATURE_TOLERANCE`] or
/// [`MAX_QUADRATURE_NODES`] is reached.
pub fn matrix_element_quadrature(
    basis: &OscillatorBasis,
    pert: &Perturbation,
    bra: u64,
    ket: u64,
) -> Result<QuadratureEstimate> {
    pert.validate()?;
    let top = bra.max(ket);
    if top > NU_MAX {
        return Err(capability(top));
    }
    let b = basis.length_scale;
    let g = |y: f64| pert.eval(b * y);
    // absolute floor for elements that vanish by symmetry
    let floor = match *pert {
        Perturbation::Linear { strength } => strength.abs() * b * ((top as f64) + 1.0).sqrt(),
        Perturbation::Quadratic { strength } => strength.abs() * b * b * (top as f64 + 1.0),
        Perturbation::Gaussian { strength, .. } => strength.abs(),
    } * 1e-14;
    let mut n = MIN_QUADRATURE_NODES.max((top as usize + 2).next_power_of_two());
    let mut prev = GaussHermite::cached(n)?.integrate_pair(bra as usize, ket as usize, g);
    while n < MAX_QUADRATURE_NODES {
        n *= 2;
        let est = GaussHermite::cached(n)?.integrate_pair(bra as usize, ket as usize, g);
        if (est - prev).abs() <= QUADRATURE_TOLERANCE * est.abs().max(prev.abs()) + floor {
            return Ok(QuadratureEstimate {
                value: est,
                nodes: n,
                converged: true,
            });
        }
        prev = est;
    }
    Ok(QuadratureEstimate {
        value: prev,
        nodes: n,
        converged: false,
    })
}

/// Closed form of ⟨bra|H̃|ket⟩ from ladder-operator algebra, `None` for
/// perturbations without one.
pub fn matrix_element_closed_form(
    basis: &OscillatorBasis,
    pert: &Perturbation,
    bra: u64,
    ket: u64,
) -> Option<f64> {
    let b = basis.length_scale;
    let hi = bra.max(ket) as f64;
    let diff = bra.abs_diff(ket);
    match *pert {
        // ξ = b(a + a†)/√2
        Perturbation::Linear { strength } => Some(if diff == 1 {
            strength * b * (hi / 2.0).sqrt()
        } else {
            0.0
        }),
        Perturbation::Quadratic { strength } => Some(match diff {
            0 => strength * b * b * (2.0 * hi + 1.0) / 2.0,
            2 => strength * b * b * (hi * (hi - 1.0)).sqrt() / 2.0,
            _ => 0.0,
        }),
        Perturbation::Gaussian { .. } => None,
    }
}

/// ⟨bra|H̃|ket⟩: closed form where available, quadrature otherwise.
pub fn matrix_element(
    basis: &OscillatorBasis,
    pert: &Perturbation,
    bra: u64,
    ket: u64,
) -> Result<f64> {
    pert.validate()?;
    if let Some(v) = matrix_element_closed_form(basis, pert, bra, ket) {
        return Ok(v);
    }
    Ok(matrix_element_quadrature(basis, pert, bra, ket)?.value)
}

/// β⁽ˡ⁾_ν = ⟨ν − l|H̃|ν⟩.
pub fn beta(basis: &OscillatorBasis, pert: &Perturbation, nu: u64, l: u64) -> Result<f64> {
    if l > nu {
        return Err(Error::domain(format!(
            "harmonic {l} exceeds quantum number {nu}"
        )));
    }
    if !pert.has_closed_form() && nu > NU_MAX {
        return Err(capability(nu));
    }
    matrix_element(basis, pert, nu - l, nu)
}
