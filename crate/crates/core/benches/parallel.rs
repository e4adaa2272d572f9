//! Rayon pool versus a single worker on the two data-parallel hot paths:
//! column assembly of a dual matrix and a spectrum scan over a lambda grid.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dtto_core::analysis::{spectrum_scan, ScanGrid, SpectralSymbol};
use dtto_core::inner_rational::{BlaschkeProduct, RationalFunction};
use dtto_core::linalg::DEFAULT_KERNEL_THRESHOLD;
use dtto_core::operators::dual_truncated_matrix;
use dtto_core::{c64, fourier::FourierVector};

fn pools() -> Vec<(String, rayon::ThreadPool)> {
    let default = rayon::ThreadPoolBuilder::new().build().unwrap();
    let n = default.current_num_threads();
    vec![
        ("sequential".into(), rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        (format!("rayon-{n}"), default),
    ]
}

fn dual_assembly(c: &mut Criterion) {
    let theta = BlaschkeProduct::factor(c64(0.5, 0.0))
        .unwrap()
        .mul(&BlaschkeProduct::monomial(2));
    let phi = FourierVector::from_terms(2, &[(-2, c64(0.3, 0.0)), (0, c64(1.0, 0.0)), (1, c64(0.5, 0.2))]).unwrap();
    let mut g = c.benchmark_group("dual_matrix");
    g.sample_size(10);
    for (name, pool) in pools() {
        for n in [64usize, 128] {
            g.bench_with_input(BenchmarkId::new(name.as_str(), n), &n, |b, &n| {
                pool.install(|| b.iter(|| dual_truncated_matrix(&phi, &theta, &theta, n, n).unwrap()))
            });
        }
    }
    g.finish();
}

fn scan(c: &mut Criterion) {
    let theta = BlaschkeProduct::monomial(3);
    let symbol = SpectralSymbol::Rational(RationalFunction::polynomial(vec![c64(0.0, 0.0), c64(1.0, 0.0)]));
    let grid = ScanGrid {
        re: [-1.5, 1.5],
        im: [-1.5, 1.5],
        step: 0.25,
    };
    let mut g = c.benchmark_group("spectrum_scan");
    g.sample_size(10);
    for (name, pool) in pools() {
        g.bench_function(name.as_str(), |b| {
            pool.install(|| b.iter(|| spectrum_scan(&symbol, &theta, &grid, 32, 32, DEFAULT_KERNEL_THRESHOLD).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, dual_assembly, scan);
criterion_main!(benches);
