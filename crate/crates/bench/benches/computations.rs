use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use t237::exact_algebra::rat;
use t237::intersection_calc::{self as ic};
use t237::quotient_sing::{self as qs};
use t237::riemann_roch::{self as rr};
use t237::weierstrass::{self as w, BrieskornParams};

fn bench_delta(c: &mut Criterion) {
    let chain = qs::hj_expand(97, 35).unwrap();
    let inc = t237::SingularityIncidence::at_last_curve(chain.clone());
    c.bench_function("delta_canonical 1/97(1,35) n=1..60", |b| {
        b.iter(|| (1..=60).map(|n| qs::delta_canonical(black_box(&chain), n)).collect::<Vec<_>>())
    });
    c.bench_function("delta incidence 1/97(1,35) n=1..60", |b| {
        b.iter(|| (1..=60).map(|n| qs::delta(black_box(&inc), n)).collect::<Vec<_>>())
    });
}

fn bench_plurigenera(c: &mut Criterion) {
    let mut group = c.benchmark_group("plurigenera");
    for (name, data) in [("canonical", rr::theorem_4_3()), ("pair", rr::theorem_4_4())] {
        group.bench_with_input(BenchmarkId::new(name, 150), &data, |b, d| {
            b.iter(|| rr::plurigenera(black_box(d), 150).unwrap())
        });
    }
    group.finish();
}

fn bench_brieskorn(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_surface");
    group.sample_size(20);
    let generic = BrieskornParams::from_values(std::array::from_fn(|i| rat(i as i64 + 1, 3)));
    group.bench_function("generic", |b| b.iter(|| w::classify_surface(black_box(&generic)).unwrap()));
    let special = w::special_locus_params(&rat(1, 1), &rat(1, 1));
    group.bench_function("special 1,1", |b| b.iter(|| w::classify_surface(black_box(&special)).unwrap()));
    let cusp = w::special_locus_params(&rat(-3, 1), &rat(2, 1));
    group.bench_function("cusp -3,2", |b| b.iter(|| w::classify_surface(black_box(&cusp)).unwrap()));
    group.finish();
}

fn bench_lattice(c: &mut Criterion) {
    let g = ic::gram(&ic::t237());
    let f = ic::t237_fiber();
    c.bench_function("signature t237", |b| b.iter(|| ic::signature(black_box(&g)).unwrap()));
    c.bench_function("split_hyperbolic t237", |b| {
        b.iter(|| ic::split_hyperbolic(black_box(&g), black_box(&f)).unwrap())
    });
}

criterion_group!(benches, bench_delta, bench_plurigenera, bench_brieskorn, bench_lattice);
criterion_main!(benches);
