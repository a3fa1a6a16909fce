use std::hint::black_box;

use btw_bench::irreducible;
use btw_core::sabem::{
    enumerate_moments, second_moment_closed_form, second_moment_enumerated, table2_report,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn second_moment(c: &mut Criterion) {
    let mut group = c.benchmark_group("second_moment");
    for (n, m) in [(12usize, 80usize), (60, 400), (200, 2000)] {
        let inst = irreducible(n, m, 3);
        group.bench_with_input(BenchmarkId::new("closed_form", m), &inst, |b, inst| {
            b.iter(|| second_moment_closed_form(black_box(inst)))
        });
        group.bench_with_input(BenchmarkId::new("pair_enumeration", m), &inst, |b, inst| {
            b.iter(|| second_moment_enumerated(black_box(inst)))
        });
    }
    let small = irreducible(8, 40, 3);
    group.bench_function("direct_enumeration/8", |b| {
        b.iter(|| enumerate_moments(black_box(&small)).unwrap())
    });
    group.finish();
}

fn case_weights(c: &mut Criterion) {
    c.bench_function("pair_case_weights", |b| b.iter(table2_report));
}

criterion_group!(benches, second_moment, case_weights);
criterion_main!(benches);
