use std::hint::black_box;

use argshift::criterion::{theorem2_decide, CriterionOptions};
use argshift::liealg::catalog;
use argshift::ratpoly::gcd_multivariate;
use argshift::shiftalg::{extended_generators, trdeg_estimate, TrdegOptions};
use argshift::singular::{fundamental_semiinvariant, index, pfaffian, structure_matrix};
use argshift::{MultiPoly, ShiftPoint};
use criterion::{criterion_group, criterion_main, Criterion};

const ALGEBRAS: [&str; 4] = ["b2+h3", "h5", "gl2", "b2+b2"];

fn semiinvariant(c: &mut Criterion) {
    let mut group = c.benchmark_group("fundamental_semiinvariant");
    for name in ALGEBRAS {
        let alg = catalog(name).unwrap();
        group.bench_function(name, |b| b.iter(|| fundamental_semiinvariant(black_box(&alg)).unwrap()));
    }
    group.finish();
}

fn pfaffian_full(c: &mut Criterion) {
    let alg = catalog("b2+b2+b2+b2").unwrap();
    let m = structure_matrix(&alg).entries().to_vec();
    let unit = MultiPoly::one(alg.dim());
    c.bench_function("pfaffian_symbolic_8x8", |b| b.iter(|| pfaffian(black_box(&m), &unit).unwrap()));
}

fn gcd(c: &mut Criterion) {
    let p = |s: &str| MultiPoly::parse(s, 3).unwrap();
    let common = p("x1^2 + 3*x2*x3 - 1");
    let f = &common * &p("x1*x2 - x3^2 + 2");
    let g = &common * &p("x1 + x2^3 - 5*x3");
    c.bench_function("gcd_trivariate", |b| b.iter(|| gcd_multivariate(black_box(&f), black_box(&g)).unwrap()));
}

fn trdeg(c: &mut Criterion) {
    let mut group = c.benchmark_group("trdeg_extended");
    for name in ALGEBRAS {
        let alg = catalog(name).unwrap();
        let cert = index(&alg);
        let p_g = fundamental_semiinvariant(&alg).unwrap();
        let a = ShiftPoint::random(&alg, &cert, 0);
        let gens = extended_generators(&alg, &a, &p_g).unwrap().polys();
        let opts = TrdegOptions::default();
        group.bench_function(name, |b| b.iter(|| trdeg_estimate(black_box(&gens), alg.dim(), &opts).unwrap()));
    }
    group.finish();
}

fn decide(c: &mut Criterion) {
    let mut group = c.benchmark_group("theorem2_decide");
    group.sample_size(10);
    for name in ["b2+h3", "h5"] {
        let alg = catalog(name).unwrap();
        let a = ShiftPoint::random(&alg, &index(&alg), 0);
        let opts = CriterionOptions::default();
        group.bench_function(name, |b| b.iter(|| theorem2_decide(black_box(&alg), &a, &opts, false).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, semiinvariant, pfaffian_full, gcd, trdeg, decide);
criterion_main!(benches);
