//! Macroscopic matter waves of composite systems.
//!
//! A beam of composite particles (electrons gyrating in a magnetic field,
//! vibrating or rotating diatomics, Rydberg atoms) that changes its internal
//! quantum number by `l` at a scatterer acquires a translational phase
//! `exp(i l ω x / v)`. In the large quantum number limit the wave number
//! `ω / v` no longer depends on Planck's constant, so the associated
//! wavelength `2πv/ω` can reach centimetres.
//!
//! The crate is organised bottom-up:
//!
//! * [`physcore`]: constants, lab-unit conversions and the internal spectra.
//! * [`dispersion`]: exact wave numbers, their first-order limit and the
//!   error between the two.
//! * [`matrixelem`]: oscillator wavefunctions, Gauss-Hermite quadrature and
//!   transition matrix elements.
//! * [`interference`]: grid amplitudes, two-grid intensities, harmonic
//!   mixtures and combined ro-vibrational fringes.
//! * [`evolution`]: split-step integration of the amplitude equations.
//! * [`analysis`]: energy sweeps, peak detection, 1/L scaling and beats.
//!
//! Data-parallel loops go through [`par`], which falls back to sequential
//! iteration when the `parallel` feature is disabled.

pub mod analysis;
pub mod dispersion;
pub mod error;
pub mod evolution;
pub mod interference;
pub mod matrixelem;
pub mod par;
pub mod physcore;

pub use error::{Error, Result};
pub use num_complex::Complex64;
