use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ramkloost::matrices::{build_aq, build_bq, build_x, build_y};
use ramkloost::spectral::{jacobi_eigen, rank_exact};
use ramkloost::sums::{kloosterman, ramanujan};
use ramkloost::{spectrum, MatrixKind};

fn sums(c: &mut Criterion) {
    c.bench_function("ramanujan q=840 n=35", |b| b.iter(|| ramanujan(black_box(840), black_box(35))));
    c.bench_function("kloosterman q=210", |b| b.iter(|| kloosterman(black_box(210), 3, 7)));
}

fn builders(c: &mut Criterion) {
    c.bench_function("build A_q q=256", |b| b.iter(|| build_aq(black_box(256))));
    c.bench_function("build B_q q=64", |b| b.iter(|| build_bq(black_box(64))));
    c.bench_function("build X Q=6", |b| b.iter(|| build_x(black_box(6))));
    c.bench_function("build Y Q=5", |b| b.iter(|| build_y(black_box(5))));
}

fn products(c: &mut Criterion) {
    let b32 = build_bq(32).unwrap();
    c.bench_function("exact B_q^2 q=32", |b| b.iter(|| b32.mul(&b32)));
    let x7 = build_x(7).unwrap();
    c.bench_function("rank X Q=7", |b| b.iter(|| rank_exact(&x7, 420)));
}

fn eigen(c: &mut Criterion) {
    let f = build_bq(48).unwrap().float().to_vec();
    c.bench_function("jacobi B_q q=48", |b| b.iter(|| jacobi_eigen(&f, 48)));
    let mut g = c.benchmark_group("spectrum");
    g.sample_size(10);
    g.bench_function("B_q q=40", |b| b.iter(|| spectrum(MatrixKind::Bq, 40)));
    g.bench_function("Y Q=4", |b| b.iter(|| spectrum(MatrixKind::Y, 4)));
    g.finish();
}

criterion_group!(benches, sums, builders, products, eigen);
criterion_main!(benches);
