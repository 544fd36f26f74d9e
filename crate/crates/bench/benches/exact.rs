use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use singlering::permgroup::MonotoneCounts;
use singlering::singlering::{sweep_counting_lemma, trace_moment_sq, trace_moment_uu};
use singlering::weingarten::WgTable;
use singlering::{entry_moment, SingularProfile};
use singlering_bench::{corner_moment, diagonal_moment};

fn weingarten_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("wg_table");
    for k in [4, 6, 8] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| WgTable::new(k, black_box(2 * k)).unwrap())
        });
    }
    group.finish();
}

fn monotone_counts(c: &mut Criterion) {
    let mut group = c.benchmark_group("monotone_counts");
    for k in [4, 6] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| MonotoneCounts::compute(k, k * k + 4).unwrap())
        });
    }
    group.finish();
}

fn entry_moments(c: &mut Criterion) {
    let mut group = c.benchmark_group("entry_moment");
    for k in [4, 6, 8] {
        let diagonal = diagonal_moment(k, 10);
        group.bench_with_input(BenchmarkId::new("diagonal", k), &diagonal, |b, spec| {
            b.iter(|| entry_moment(black_box(spec)).unwrap())
        });
        let corner = corner_moment(k, 10);
        group.bench_with_input(BenchmarkId::new("corner", k), &corner, |b, spec| {
            b.iter(|| entry_moment(black_box(spec)).unwrap())
        });
    }
    group.finish();
}

fn trace_moments(c: &mut Criterion) {
    let p = SingularProfile::from_integers(&[1, 2, 3, 4, 5]).unwrap();
    let mut group = c.benchmark_group("trace_moment");
    group.sample_size(10);
    for k in [2, 3, 4] {
        group.bench_with_input(BenchmarkId::new("uu", k), &k, |b, &k| {
            b.iter(|| trace_moment_uu(k, black_box(&p)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sq", k), &k, |b, &k| {
            b.iter(|| trace_moment_sq(k, black_box(&p)).unwrap())
        });
    }
    group.finish();
}

fn counting_lemma(c: &mut Criterion) {
    let mut group = c.benchmark_group("counting_lemma");
    group.sample_size(10);
    group.bench_function("k6", |b| {
        b.iter(|| sweep_counting_lemma(black_box(6)).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    weingarten_tables,
    monotone_counts,
    entry_moments,
    trace_moments,
    counting_lemma
);
criterion_main!(benches);
