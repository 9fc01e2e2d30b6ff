use criterion::{black_box, criterion_group, criterion_main, Criterion};
use welding_core::exact::rational::rat;
use welding_core::exact::series::rational_series;
use welding_core::exact::{Family, Point};
use welding_core::moments::{MomentConfig, MomentEngine};
use welding_core::virasoro::{build_level_operators, compute_b};

fn series(c: &mut Criterion) {
    let terms: Vec<(i64, i64, i64)> = (1..=24)
        .map(|k| (k, if k % 3 == 0 { -1 } else { 1 }, k))
        .collect();
    let f = rational_series(Point::Zero, &terms).truncate(24);
    c.bench_function("series revert order 24", |b| {
        b.iter(|| black_box(&f).revert().unwrap())
    });
    let g = rational_series(Point::Zero, &[(0, 1, 1), (1, 1, 3), (2, -2, 5)]).truncate(60);
    c.bench_function("series pow 1/3 order 60", |b| {
        b.iter(|| black_box(&g).pow_rational(&rat(1, 3)).unwrap())
    });
}

fn residues(c: &mut Criterion) {
    c.bench_function("B_m(n) both routes, m = 3, n = 6", |b| {
        b.iter(|| compute_b(Family::U, black_box(3), black_box(6)).unwrap())
    });
}

fn moments(c: &mut Criterion) {
    let mut g = c.benchmark_group("moments");
    g.sample_size(10);
    for level in [3u32, 5] {
        g.bench_function(format!("solve through level {level}"), |b| {
            b.iter(|| {
                let mut e = MomentEngine::new(MomentConfig::default()).unwrap();
                e.solve_through(level).unwrap();
                e
            })
        });
    }
    g.bench_function("level operators n = 6", |b| {
        b.iter(|| build_level_operators(black_box(6)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, series, residues, moments);
criterion_main!(benches);
