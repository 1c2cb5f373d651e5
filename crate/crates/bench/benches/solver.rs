use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nu_spectra::verify;
use nu_spectra::woods_saxon::{self, WoodsSaxonFamily};
use nu_spectra::{Complex64, Variant};

fn spectrum(c: &mut Criterion) {
    let params = verify::real_params_for_beta(30.0);
    let nonpt = Variant::NonPtNonHermitian { v0i: 8.0, alpha_i: 0.5 };
    c.bench_function("spectrum/real_n20", |b| {
        b.iter(|| woods_saxon::spectrum(black_box(&params), &Variant::Real, 20))
    });
    c.bench_function("spectrum/nonpt_n20", |b| {
        b.iter(|| woods_saxon::spectrum(black_box(&verify::reference_params()), &nonpt, 20))
    });
}

fn quantize(c: &mut Criterion) {
    let mut group = c.benchmark_group("quantize");
    for beta in [5.0, 16.0, 30.0] {
        let family = WoodsSaxonFamily::new(Complex64::new(beta, 0.0), Complex64::new(1.0, 0.0));
        group.bench_with_input(BenchmarkId::from_parameter(beta), &family, |b, f| b.iter(|| f.quantize(black_box(0))));
    }
    group.finish();
}

fn normalize(c: &mut Criterion) {
    let mut group = c.benchmark_group("normalize");
    for (n, t) in [(0u32, 1.0), (2, 7.5), (6, 20.0)] {
        group.bench_with_input(BenchmarkId::new(format!("n{n}"), t), &(n, t), |b, &(n, t)| {
            b.iter(|| woods_saxon::normalize(black_box(n), black_box(t), 1.0))
        });
    }
    group.finish();
}

fn fd_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("fd_jacobi_eigen");
    group.sample_size(10);
    for grid in [1000usize, 4000] {
        group.bench_with_input(BenchmarkId::from_parameter(grid), &grid, |b, &grid| {
            b.iter(|| verify::fd_jacobi_eigen(1.5, 4, black_box(grid)))
        });
    }
    group.finish();
}

criterion_group!(benches, spectrum, quantize, normalize, fd_oracle);
criterion_main!(benches);
