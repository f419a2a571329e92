use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use duomode_bench::{gaussian_state, sampled_state};
use duomode_core::montecarlo::{estimate_contrast, sampling_grid};
use duomode_core::numerics::double_overlap_bruteforce;
use duomode_core::verify::{run_suite, SuiteConfig};
use duomode_core::{spatial_total, DetectionModel, DetectorBin, Statistics, Vector};

fn detection(c: &mut Criterion) {
    let r = Vector::new(&[0.7]).unwrap();
    let sampled = sampled_state(Statistics::Fermion);
    let grid = sampled.mode_grid().unwrap();
    c.bench_function("model_build_sampled_1d", |b| {
        b.iter(|| DetectionModel::new(black_box(&sampled), &grid).unwrap())
    });
    let model = DetectionModel::new(&sampled, &grid).unwrap();
    c.bench_function("probability_sampled_1d", |b| b.iter(|| model.probability(black_box(&r))));

    let g3 = gaussian_state(Statistics::Boson, 3, 1.0);
    let grid3 = g3.mode_grid().unwrap();
    let model3 = DetectionModel::new(&g3, &grid3).unwrap();
    let r3 = Vector::new(&[0.5, 0.3, -0.2]).unwrap();
    c.bench_function("probability_gaussian_3d", |b| b.iter(|| model3.probability(black_box(&r3))));

    let g1 = gaussian_state(Statistics::Boson, 1, 1.0);
    let coarse = g1.mode_grid().unwrap().with_nodes(257).unwrap();
    c.bench_function("bruteforce_double_sum_257", |b| {
        b.iter(|| double_overlap_bruteforce(g1.f(), g1.g(), black_box(&r), &coarse, g1.config()).unwrap())
    });
}

fn integrals(c: &mut Criterion) {
    let s = gaussian_state(Statistics::Fermion, 1, 1.5);
    let (pos, mode) = (s.position_grid().unwrap(), s.mode_grid().unwrap());
    c.bench_function("spatial_total_1d", |b| b.iter(|| spatial_total(black_box(&s), &pos, &mode).unwrap()));

    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    let cfg = SuiteConfig {
        families: 100,
        ..SuiteConfig::default()
    };
    group.bench_function("verify_100_families", |b| b.iter(|| run_suite(black_box(&cfg)).unwrap()));
    let bin = DetectorBin::cube(Vector::zeros(1), 0.1).unwrap();
    let boson = gaussian_state(Statistics::Boson, 1, 1.0);
    let sgrid = sampling_grid(&boson, &bin).unwrap();
    let bmode = boson.mode_grid().unwrap();
    group.bench_function("contrast_estimate_1e5", |b| {
        b.iter(|| estimate_contrast(&boson, &bin, 100_000, black_box(1), &sgrid, &bmode).unwrap())
    });
    group.finish();
}

criterion_group!(benches, detection, integrals);
criterion_main!(benches);
