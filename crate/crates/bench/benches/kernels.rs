use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rieszlab_bench::{circle_family, sphere_family};
use rieszlab_core::estimators::{correlation_dimension, default_radii};
use rieszlab_core::harmonics::{build_basis, decompose};
use rieszlab_core::{energy_direct, energy_fourier, BasisCache, SampleSet};

fn partial_products(c: &mut Criterion) {
    let mut group = c.benchmark_group("partial_product");
    let spec = circle_family(10);
    for n in [4usize, 7, 10] {
        group.bench_with_input(BenchmarkId::new("circle", n), &n, |b, &n| {
            b.iter(|| spec.partial_product(black_box(n)).unwrap())
        });
    }
    let triple = sphere_family(4);
    for k in [2usize, 3, 4] {
        group.bench_with_input(BenchmarkId::new("sphere", k), &k, |b, &k| {
            b.iter(|| triple.partial_product(black_box(k)).unwrap())
        });
    }
    group.finish();
}

fn bases(c: &mut Criterion) {
    let mut group = c.benchmark_group("basis");
    for (p, q) in [(4u32, 4u32), (16, 10), (24, 24)] {
        group.bench_with_input(BenchmarkId::new("build", format!("{p}x{q}")), &(p, q), |b, &(p, q)| {
            b.iter(|| build_basis(black_box(p), black_box(q)).unwrap())
        });
    }
    let product = sphere_family(3).partial_product(3).unwrap();
    group.bench_function("decompose_k3_cold", |b| {
        b.iter(|| decompose(black_box(&product.poly), &mut BasisCache::new()).unwrap())
    });
    group.finish();
}

fn energies(c: &mut Criterion) {
    let mut group = c.benchmark_group("energy");
    let density = circle_family(3).partial_product(3).unwrap();
    group.bench_function("fourier", |b| {
        b.iter(|| energy_fourier(black_box(&density), 0.5, u64::MAX).unwrap())
    });
    for m in [1usize << 10, 1 << 12] {
        group.bench_with_input(BenchmarkId::new("direct", m), &m, |b, &m| {
            b.iter(|| energy_direct(black_box(&density), 0.5, m).unwrap())
        });
    }
    group.finish();
}

fn estimators(c: &mut Criterion) {
    let mut group = c.benchmark_group("correlation_dimension");
    group.sample_size(10);
    for (name, samples) in [
        ("circle", SampleSet::uniform_circle(10_000, 1)),
        ("sphere", SampleSet::uniform_sphere(10_000, 2)),
    ] {
        let radii = default_radii(samples.manifold, 10);
        group.bench_function(name, |b| {
            b.iter(|| correlation_dimension(black_box(&samples), &radii).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, partial_products, bases, energies, estimators);
criterion_main!(benches);
