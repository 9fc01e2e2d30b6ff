use criterion::{black_box, criterion_group, criterion_main, Criterion};
use welding_core::exact::rational::rat;
use welding_core::exact::GaussianRational;
use welding_core::family::{family_area, FamilyPoint};
use welding_core::numerics::{
    bessel_k, cardy_exponent, cardy_f, diag_laplace, ConjectureParams, Hp,
};

fn special(c: &mut Criterion) {
    let (alpha, x) = (Hp::from_f64(0.5), Hp::from_f64(2.0));
    c.bench_function("bessel K_0.5(2)", |b| {
        b.iter(|| bessel_k(black_box(&alpha), black_box(&x)).unwrap())
    });
    let p = ConjectureParams::from_f64(5.0, 0.5).unwrap();
    let lambda = Hp::from_f64(1.0);
    c.bench_function("diag_laplace", |b| {
        b.iter(|| diag_laplace(black_box(&lambda), &p).unwrap())
    });
}

fn cardy(c: &mut Criterion) {
    let big = Hp::from_i64(50);
    let small = Hp::from_f64(0.1);
    c.bench_function("cardy F(50)", |b| {
        b.iter(|| cardy_f(black_box(&big)).unwrap())
    });
    c.bench_function("cardy exponent at 0.1", |b| {
        b.iter(|| cardy_exponent(black_box(&small)).unwrap())
    });
}

fn family(c: &mut Criterion) {
    let pt = FamilyPoint::new(2, GaussianRational::new(rat(1, 4), rat(1, 3))).unwrap();
    let mut g = c.benchmark_group("family");
    g.sample_size(10);
    g.bench_function("area order 200, N = 2", |b| {
        b.iter(|| family_area(black_box(&pt), 200).unwrap())
    });
    g.finish();
}

criterion_group!(benches, special, cardy, family);
criterion_main!(benches);
