use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;
use std::hint::black_box;
use terai_core::form::{class_number, Form};

fn reduce_and_compose(c: &mut Criterion) {
    // Discriminant -4 * 9 * 1999; (9, 18t, 9t^2 + 1999) with t = 1000 sits far from reduced.
    let f = Form::from_i64(9, 18_000, 9_001_999).unwrap();
    let g = f.reduced();
    c.bench_function("reduce", |b| b.iter(|| black_box(&f).reduced()));
    c.bench_function("compose_reduced", |b| b.iter(|| black_box(&g).compose_reduced(black_box(&g)).unwrap()));
    c.bench_function("power_1000", |b| b.iter(|| black_box(&g).power(1000)));
}

fn class_numbers(c: &mut Criterion) {
    let disc = BigInt::from(-4 * 9 * 1999);
    c.bench_function("class_number_-71964", |b| b.iter(|| class_number(black_box(&disc)).unwrap()));
    let big = BigInt::from(-4i64 * 2_000_003);
    c.bench_function("class_number_-8000012", |b| b.iter(|| class_number(black_box(&big)).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = reduce_and_compose, class_numbers
}
criterion_main!(benches);
