use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fracmom_bench::{grid, points};
use fracmom_core::{cf_series, complex_gamma, make_grid, pdf_series, Complex64, DistributionSpec, GridParams, Method, Sign};

fn gamma(c: &mut Criterion) {
    let zs: Vec<Complex64> = points(-10.0, 10.0, 64).into_iter().map(|eta| Complex64::new(0.4, eta)).collect();
    c.bench_function("complex_gamma/64 points on Re z = 0.4", |b| {
        b.iter(|| zs.iter().map(|&z| complex_gamma(black_box(z)).unwrap()).sum::<Complex64>())
    });
}

fn grids(c: &mut Criterion) {
    let mut group = c.benchmark_group("make_grid m=25");
    for spec in DistributionSpec::catalog() {
        let params = GridParams::new(0.4, 0.4, 25, Sign::Minus).unwrap();
        group.bench_with_input(BenchmarkId::new("closed", spec.family()), &spec, |b, s| {
            b.iter(|| make_grid(s, black_box(params), &Method::ClosedForm).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("quad", spec.family()), &spec, |b, s| {
            b.iter(|| make_grid(s, black_box(params), &Method::Quadrature).unwrap())
        });
    }
    group.finish();
}

fn series(c: &mut Criterion) {
    let uniform = grid(&DistributionSpec::uniform(2.0).unwrap(), 25);
    let thetas = points(0.1, 20.0, 200);
    c.bench_function("cf_series/uniform m=25, 200 θ", |b| {
        b.iter(|| thetas.iter().map(|&t| cf_series(&uniform, black_box(t)).unwrap()).sum::<Complex64>())
    });

    let gaussian = grid(&DistributionSpec::gaussian(2.0, 1.0).unwrap(), 15);
    let xs: Vec<f64> = points(-2.0, 6.0, 201).into_iter().filter(|x| x.abs() >= 0.1).collect();
    c.bench_function("pdf_series/gaussian m=15, 200 x", |b| {
        b.iter(|| xs.iter().map(|&x| pdf_series(&gaussian, black_box(x)).unwrap()).sum::<f64>())
    });
}

criterion_group!(benches, gamma, grids, series);
criterion_main!(benches);
