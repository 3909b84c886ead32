use criterion::{black_box, criterion_group, criterion_main, Criterion};
use nct_bench::{lcg_matrix, sqrt2, sqrt2_matrix};
use nct_core::cfrac::{cf_expand, fundamental_unit};
use nct_core::elliptic::{count_points, CurveModel};
use nct_core::exact::QuadInt;
use nct_core::lfunc::{
    dirichlet_character_group, dirichlet_local_factor, euler_product, ExcludedPrimes,
};
use nct_core::zlinalg::smith_normal_form;
use num_bigint::BigInt;
use num_rational::BigRational;

fn bench_cf_and_units(c: &mut Criterion) {
    c.bench_function("cf_expand sqrt(94)", |b| {
        let theta = QuadInt::sqrt(BigInt::from(94)).unwrap();
        b.iter(|| cf_expand(black_box(&theta)).unwrap())
    });
    c.bench_function("fundamental_unit sqrt(94)", |b| {
        let theta = QuadInt::sqrt(BigInt::from(94)).unwrap();
        b.iter(|| fundamental_unit(black_box(&theta)).unwrap())
    });
    c.bench_function("quadint pow eps^199", |b| {
        let eps = fundamental_unit(&sqrt2()).unwrap().epsilon;
        b.iter(|| black_box(&eps).pow(199).unwrap())
    });
}

fn bench_snf(c: &mut Criterion) {
    c.bench_function("snf 6x6 integer", |b| {
        let m = lcg_matrix(6, 42, 30);
        b.iter(|| smith_normal_form(black_box(&m)))
    });
}

fn bench_point_counts(c: &mut Criterion) {
    c.bench_function("count_points p=9973", |b| {
        let curve = CurveModel::new(BigInt::from(-1), BigInt::from(0)).unwrap();
        b.iter(|| count_points(black_box(&curve), 9973).unwrap())
    });
}

fn bench_euler_product(c: &mut Criterion) {
    let mut group = c.benchmark_group("euler_product");
    group.sample_size(10);
    group.bench_function("zeta(2) partial to 10^5", |b| {
        let trivial = dirichlet_character_group(1).unwrap()[0].clone();
        let s = BigRational::from(BigInt::from(2));
        b.iter(|| {
            euler_product(
                |p| dirichlet_local_factor(&trivial, p),
                black_box(&s),
                100_000,
                &ExcludedPrimes::none(),
                128,
                1,
            )
            .unwrap()
        })
    });
    group.finish();
}

fn bench_matrix_power(c: &mut Criterion) {
    c.bench_function("matrix pow A^997 trace", |b| {
        let a = sqrt2_matrix();
        b.iter(|| black_box(&a).pow(997).unwrap().trace().unwrap())
    });
}

criterion_group!(
    benches,
    bench_cf_and_units,
    bench_snf,
    bench_point_counts,
    bench_euler_product,
    bench_matrix_power
);
criterion_main!(benches);
