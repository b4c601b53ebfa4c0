use std::hint::black_box;

use bridgevar::exactalg::resultant;
use bridgevar::geometry::smoothness_certificate;
use bridgevar::models::d_equation;
use bridgevar::polyseq::identity_suite;
use bridgevar::riley::{riley_poly_j, riley_poly_matrix};
use bridgevar::Var;
use criterion::{criterion_group, criterion_main, Criterion};

fn kernel(c: &mut Criterion) {
    let f = d_equation(6, -8);
    let g = f.deriv(Var::T);
    c.bench_function("resultant of D(6,-8) and its t-derivative", |b| {
        b.iter(|| resultant(black_box(&f), black_box(&g), Var::T).unwrap())
    });
    c.bench_function("Riley polynomial by matrices, k=5 n=3", |b| b.iter(|| riley_poly_matrix(black_box(5), black_box(3)).unwrap()));
    c.bench_function("Riley polynomial closed form, k=5 n=3", |b| b.iter(|| riley_poly_j(black_box(5), black_box(3))));
    c.bench_function("identity suite, range 20", |b| b.iter(|| identity_suite(black_box(20))));
}

fn geometry(c: &mut Criterion) {
    let mut g = c.benchmark_group("smoothness certificate");
    g.sample_size(20);
    g.bench_function("J(7,-10)", |b| b.iter(|| smoothness_certificate(black_box(7), black_box(-10)).unwrap()));
    g.bench_function("J(10,10)", |b| b.iter(|| smoothness_certificate(black_box(10), black_box(10)).unwrap()));
    g.finish();
}

criterion_group!(benches, kernel, geometry);
criterion_main!(benches);
