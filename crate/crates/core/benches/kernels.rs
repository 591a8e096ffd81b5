//! Sequential against parallel execution of the data-parallel kernels.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use macrowave::analysis::{transmission_sweep_with, PathLength, SweepConfig};
use macrowave::evolution::{evolve_modes, EvolutionParams, OmegaProfile, WaveField};
use macrowave::interference::{
    sample_pattern, separations, two_grid_intensity, HarmonicMixture, ScattererGrid,
};
use macrowave::par::Exec;
use macrowave::physcore::{units, BeamSpec, InternalSystem, PhysicalConstants};
use macrowave::Complex64;
use std::hint::black_box;

const C: PhysicalConstants = PhysicalConstants::CODATA;

fn strategies() -> Vec<(&'static str, Exec)> {
    vec![
        ("sequential", Exec::Sequential),
        #[cfg(feature = "parallel")]
        ("parallel", Exec::Parallel),
    ]
}

fn sweep_config(samples: usize) -> SweepConfig {
    let system = InternalSystem::landau_from_gauss(100.0).unwrap();
    let beam =
        BeamSpec::from_kinetic_energy(&system, units::ev_to_joule(200.0), C.electron_mass, 0, &C)
            .unwrap();
    SweepConfig {
        energy_min: units::ev_to_joule(200.0),
        energy_max: units::ev_to_joule(800.0),
        sample_count: samples,
        lengths: vec![PathLength::new("Lp", 6.0), PathLength::new("Lg", 5.7)],
        system,
        beam,
        mixture: HarmonicMixture::fundamental(),
    }
}

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("transmission_sweep");
    for samples in [10_000, 100_000] {
        let cfg = sweep_config(samples);
        for (name, exec) in strategies() {
            group.bench_with_input(BenchmarkId::new(name, samples), &cfg, |b, cfg| {
                b.iter(|| transmission_sweep_with(black_box(cfg), &C, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_fringes(c: &mut Criterion) {
    let mut group = c.benchmark_group("fringe_pattern");
    let g1 = ScattererGrid::real("G1", 0.0, 1.0);
    let g2 = ScattererGrid::real("G2", 0.0, 0.8);
    let beta = Complex64::new(1.0, 0.0);
    for (name, exec) in strategies() {
        group.bench_function(name, |b| {
            b.iter(|| {
                let seps = separations(0.0, 1.0, 200_000).unwrap();
                sample_pattern(&g1, &g2, seps, exec, |a, b| {
                    two_grid_intensity(a, b, 133.0, 1, beta)
                })
            })
        });
    }
    group.finish();
}

fn bench_evolve_modes(c: &mut Criterion) {
    let mut group = c.benchmark_group("evolve_modes");
    group.sample_size(10);
    let fields: Vec<WaveField> = (1..=8)
        .map(|l| {
            WaveField::gaussian_packet(
                2048,
                40.0,
                20.0,
                1.0,
                2.0,
                l,
                1.0,
                OmegaProfile::Constant(0.5),
            )
            .unwrap()
        })
        .collect();
    let params = EvolutionParams::new(1e-3, 200).unwrap();
    for (name, exec) in strategies() {
        group.bench_function(name, |b| {
            b.iter(|| evolve_modes(black_box(&fields), &params, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_sweep, bench_fringes, bench_evolve_modes);
criterion_main!(benches);
