use macrowave::analysis::{signal_at, PathLength};
use macrowave::dispersion::{delta_kappa, kappa_exact};
use macrowave::evolution::{evolve, EvolutionParams, OmegaProfile, WaveField};
use macrowave::interference::{
    grid_amplitude, superpose, two_grid_intensity, HarmonicMixture, ScattererGrid,
};
use macrowave::matrixelem::{
    matrix_element, matrix_element_closed_form, OscillatorBasis, Perturbation,
};
use macrowave::physcore::{units, BeamSpec, InternalSystem, PhysicalConstants};
use macrowave::Complex64;
use proptest::prelude::*;
use std::f64::consts::TAU;

const C: PhysicalConstants = PhysicalConstants::CODATA;

fn complex() -> impl Strategy<Value = Complex64> {
    (0.05f64..3.0, -TAU..TAU).prop_map(|(r, p)| Complex64::from_polar(r, p))
}

fn systems() -> impl Strategy<Value = InternalSystem> {
    prop_oneof![
        (50.0f64..500.0).prop_map(|b| InternalSystem::landau_from_gauss(b).unwrap()),
        (500.0f64..4000.0).prop_map(|w| {
            InternalSystem::vibrational(units::wavenumber_cm_to_angular(w), units::amu_to_kg(7.0))
                .unwrap()
        }),
        (0.5f64..3.0).prop_map(|r| {
            InternalSystem::rotational(units::amu_to_kg(7.0), units::angstrom_to_m(r)).unwrap()
        }),
        Just(InternalSystem::Rydberg),
    ]
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

proptest! {
    #[test]
    fn intensity_matches_amplitude_sum(
        c1 in complex(), c2 in complex(), beta in complex(),
        x1 in -1.0f64..1.0, x2 in -1.0f64..1.0, probe in -2.0f64..2.0,
        k in 1.0f64..200.0, l in 1u32..5,
    ) {
        let g1 = ScattererGrid::new("G1", x1, c1);
        let g2 = ScattererGrid::new("G2", x2, c2);
        let a1 = grid_amplitude(&g1, k, l, beta, probe);
        let a2 = grid_amplitude(&g2, k, l, beta, probe);
        let oracle = superpose(&[a1, a2]).unwrap().norm_sqr();
        let i = two_grid_intensity(&g1, &g2, k, l, beta);
        let scale = beta.norm_sqr() * (c1.norm() + c2.norm()).powi(2);
        prop_assert!((i - oracle).abs() <= 1e-12 * scale);
    }

    #[test]
    fn intensity_bounds(
        c1 in complex(), c2 in complex(), beta in complex(),
        x1 in -1.0f64..1.0, k in 1.0f64..200.0, l in 1u32..5,
    ) {
        let g1 = ScattererGrid::new("G1", x1, c1);
        let g2 = ScattererGrid::new("G2", 0.0, c2);
        let i = two_grid_intensity(&g1, &g2, k, l, beta);
        let b2 = beta.norm_sqr();
        let lo = (c1.norm() - c2.norm()).powi(2) * b2;
        let hi = (c1.norm() + c2.norm()).powi(2) * b2;
        let slack = 1e-12 * hi;
        prop_assert!(i >= lo - slack && i <= hi + slack);
    }

    #[test]
    fn intensity_periodic_in_separation(
        c1 in complex(), c2 in complex(), x1 in -1.0f64..1.0,
        k in 1.0f64..50.0, l in 1u32..4,
    ) {
        let g2 = ScattererGrid::new("G2", 0.0, c2);
        let base = two_grid_intensity(&ScattererGrid::new("G1", x1, c1), &g2, k, l, Complex64::new(1.0, 0.0));
        let shifted = ScattererGrid::new("G1", x1 + TAU / (l as f64 * k), c1);
        let i = two_grid_intensity(&shifted, &g2, k, l, Complex64::new(1.0, 0.0));
        let scale = (c1.norm() + c2.norm()).powi(2);
        prop_assert!((i - base).abs() <= 1e-12 * scale);
    }

    #[test]
    fn level_energy_increases(sys in systems(), n in 1u32..100_000) {
        let n = n as f64;
        prop_assert!(sys.energy(n + 1.0, &C).unwrap() > sys.energy(n, &C).unwrap());
    }

    #[test]
    fn effective_frequency_is_action_derivative(sys in systems(), n in 1_000u32..100_000) {
        // central difference of the semiclassical energy in the action nħ
        let n = n as f64;
        let h = 0.1;
        let de = sys.semiclassical_energy(n + h, &C).unwrap() - sys.semiclassical_energy(n - h, &C).unwrap();
        let fd = de / (2.0 * h * C.hbar());
        let w = sys.effective_frequency(n, &C).unwrap();
        prop_assert!(relative(fd, w) < 1e-6, "fd {fd} vs {w}");
    }

    #[test]
    fn kappa_decreases_with_level(b in 50.0f64..500.0, ev in 100.0f64..2000.0, n in 0u32..10_000) {
        let sys = InternalSystem::landau_from_gauss(b).unwrap();
        let beam = BeamSpec::from_kinetic_energy(&sys, units::ev_to_joule(ev), C.electron_mass, 20_000, &C).unwrap();
        let n = n as f64;
        prop_assert!(kappa_exact(&beam, &sys, n, &C).unwrap() > kappa_exact(&beam, &sys, n + 1.0, &C).unwrap());
    }

    #[test]
    fn approximation_scales_with_harmonic(sys in systems(), n in 50u64..5_000, l in 2u32..8) {
        let beam = BeamSpec::from_velocity(&sys, 1e6, units::amu_to_kg(14.0), n, &C).unwrap();
        let one = delta_kappa(&beam, &sys, n as f64, 1, &C).unwrap();
        let many = delta_kappa(&beam, &sys, n as f64, l, &C).unwrap();
        prop_assert_eq!(many.delta_kappa_approx, l as f64 * one.delta_kappa_approx);
        prop_assert!(many.delta_kappa_exact > one.delta_kappa_exact);
    }

    #[test]
    fn matrix_elements_are_symmetric(
        a in 0u64..100, b in 0u64..100, s in -5.0f64..5.0, width in 0.3f64..3.0,
    ) {
        let basis = OscillatorBasis::new(1.0, 1.0, &C.with_hbar(1.0)).unwrap();
        for p in [
            Perturbation::Linear { strength: s },
            Perturbation::Quadratic { strength: s },
            Perturbation::Gaussian { strength: s, width },
        ] {
            let ab = matrix_element(&basis, &p, a, b).unwrap();
            let ba = matrix_element(&basis, &p, b, a).unwrap();
            prop_assert!((ab - ba).abs() <= 1e-10 * ab.abs().max(1e-12 * s.abs().max(1.0)));
        }
    }

    #[test]
    fn closed_forms_scale_with_length(nu in 2u64..1_000, s in 0.1f64..10.0, mass in 1e-27f64..1e-24) {
        // m → 4m halves the length scale: ξ elements halve, ξ² elements quarter
        let w = 1e13;
        let small = OscillatorBasis::new(mass, w, &C).unwrap();
        let large = OscillatorBasis::new(4.0 * mass, w, &C).unwrap();
        let lin = Perturbation::Linear { strength: s };
        let quad = Perturbation::Quadratic { strength: s };
        let r1 = matrix_element_closed_form(&large, &lin, nu - 1, nu).unwrap()
            / matrix_element_closed_form(&small, &lin, nu - 1, nu).unwrap();
        let r2 = matrix_element_closed_form(&large, &quad, nu - 2, nu).unwrap()
            / matrix_element_closed_form(&small, &quad, nu - 2, nu).unwrap();
        prop_assert!((r1 - 0.5).abs() < 1e-14);
        prop_assert!((r2 - 0.25).abs() < 1e-14);
    }

    #[test]
    fn evolution_conserves_norm(
        seed in prop::collection::vec(complex(), 64), steps in 1usize..200,
        dt in 1e-4f64..1e-1, l in 1u32..4, omega in -3.0f64..3.0,
    ) {
        let f = WaveField::new(seed, 6.0, l, 0.7, OmegaProfile::Constant(omega)).unwrap();
        let out = evolve(&f, &EvolutionParams::new(dt, steps).unwrap()).unwrap();
        prop_assert!(relative(out.norm(), f.norm()) < 1e-12);
    }

    #[test]
    fn two_length_signal_is_sum_to_product(k in 1.0f64..1e3, lp in 0.1f64..10.0, frac in 0.0f64..0.5) {
        let lg = lp * (1.0 - frac);
        let paths = [PathLength::new("p", lp), PathLength::new("g", lg)];
        let s = signal_at(k, &paths, &HarmonicMixture::fundamental());
        let oracle = 2.0 + 2.0 * (k * (lp + lg) / 2.0).cos() * (k * (lp - lg) / 2.0).cos();
        prop_assert!((s - oracle).abs() < 1e-12 * 4.0);
    }
}

#[test]
fn selection_rules_exhaustive() {
    let basis = OscillatorBasis::new(1.0, 1.0, &C.with_hbar(1.0)).unwrap();
    let lin = Perturbation::Linear { strength: 1.0 };
    let quad = Perturbation::Quadratic { strength: 1.0 };
    for nu in 0..=100u64 {
        for l in 0..=5u64.min(nu) {
            let a = matrix_element(&basis, &lin, nu - l, nu).unwrap();
            let b = matrix_element(&basis, &quad, nu - l, nu).unwrap();
            assert_eq!(a != 0.0, l == 1, "linear ν={nu} l={l}");
            assert_eq!(b != 0.0, l == 0 || l == 2, "quadratic ν={nu} l={l}");
        }
    }
}
