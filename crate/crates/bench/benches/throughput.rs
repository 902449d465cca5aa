//! Throughput benchmarks for the hot paths: basis construction, group
//! element assembly, Haar sampling, Monte Carlo volume integration, and
//! the metric verification pipeline.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sun_euler::algebra::build_basis;
use sun_euler::geometry::{verify_metric_equality, vielbein, DEFAULT_STEP};
use sun_euler::group::build_element;
use sun_euler::measure::{qr_haar_oracle, sample_haar, volume_monte_carlo};
use sun_euler::verify::{random_interior_point, INTERIOR_MARGIN};

fn bench_basis(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_basis");
    for n in [4usize, 8, 16] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| build_basis(black_box(n)).unwrap())
        });
    }
    group.finish();
}

fn bench_element(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_element");
    for n in [3usize, 4, 6, 8] {
        let basis = build_basis(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let coords: Vec<_> = (0..64)
            .map(|_| sample_haar(n, &mut rng).unwrap())
            .collect();
        let mut i = 0usize;
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| {
                i = (i + 1) % coords.len();
                build_element(&basis, black_box(&coords[i])).unwrap()
            })
        });
    }
    group.finish();
}

fn bench_samplers(c: &mut Criterion) {
    let mut group = c.benchmark_group("haar_sample");
    for n in [3usize, 4] {
        let basis = build_basis(n).unwrap();
        group.bench_with_input(BenchmarkId::new("euler", n), &n, |b, &n| {
            let mut rng = ChaCha8Rng::seed_from_u64(2);
            b.iter(|| {
                let coords = sample_haar(n, &mut rng).unwrap();
                build_element(&basis, &coords).unwrap()
            })
        });
        group.bench_with_input(BenchmarkId::new("qr_oracle", n), &n, |b, &n| {
            let mut rng = ChaCha8Rng::seed_from_u64(2);
            b.iter(|| qr_haar_oracle(n, &mut rng).unwrap())
        });
    }
    group.finish();
}

fn bench_volume_mc(c: &mut Criterion) {
    let mut group = c.benchmark_group("volume_monte_carlo");
    group.sample_size(10);
    for n in [3usize, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| volume_monte_carlo(black_box(n), 100_000, 0).unwrap())
        });
    }
    group.finish();
}

fn bench_geometry(c: &mut Criterion) {
    let mut group = c.benchmark_group("geometry");
    group.sample_size(20);
    for n in [3usize, 4, 5] {
        let basis = build_basis(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let coords = random_interior_point(n, &mut rng, INTERIOR_MARGIN).unwrap();
        group.bench_with_input(BenchmarkId::new("vielbein", n), &n, |b, _| {
            b.iter(|| vielbein(&basis, black_box(&coords), DEFAULT_STEP).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("metric_equality", n), &n, |b, _| {
            b.iter(|| verify_metric_equality(&basis, black_box(&coords), DEFAULT_STEP).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_basis,
    bench_element,
    bench_samplers,
    bench_volume_mc,
    bench_geometry
);
criterion_main!(benches);
