//! Benchmarks of the arithmetic-heavy paths: kernel scans, the spanning-set
//! reduction, the Hilbert series routes, and the two Tutte evaluations.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use zonotopal_bench::{k4_incidence, seven_columns};
use zonotopal_core::{
    hilb_activity, hilb_kernel, hilb_recursive, hilb_subset, kernel_i, p_space, tutte,
    tutte_delcon, UpperSet,
};

fn bench_kernel(c: &mut Criterion) {
    let cfg = seven_columns();
    let central = UpperSet::central(&cfg);
    let full = UpperSet::full(&cfg);
    let mut g = c.benchmark_group("kernel");
    g.sample_size(20);
    g.bench_function("seven_columns_internal", |b| {
        b.iter(|| kernel_i(black_box(&cfg), -1, &central, None).unwrap())
    });
    g.bench_function("seven_columns_k0_full", |b| {
        b.iter(|| kernel_i(black_box(&cfg), 0, &full, None).unwrap())
    });
    g.bench_function("seven_columns_external", |b| {
        b.iter(|| kernel_i(black_box(&cfg), 1, &central, None).unwrap())
    });
    g.finish();
}

fn bench_span(c: &mut Criterion) {
    let cfg = seven_columns();
    let central = UpperSet::central(&cfg);
    let mut g = c.benchmark_group("span");
    g.sample_size(20);
    g.bench_function("seven_columns_k0", |b| {
        b.iter(|| p_space(black_box(&cfg), 0, &central).unwrap())
    });
    g.finish();
}

fn bench_hilb_routes(c: &mut Criterion) {
    let cfg = k4_incidence();
    let j = UpperSet::full(&cfg);
    let mut g = c.benchmark_group("hilb_k4_full_k0");
    g.bench_function("kernel", |b| {
        b.iter(|| hilb_kernel(black_box(&cfg), 0, &j).unwrap())
    });
    g.bench_function("recursive", |b| {
        b.iter(|| hilb_recursive(black_box(&cfg), 0, &j).unwrap())
    });
    g.bench_function("activity", |b| {
        b.iter(|| hilb_activity(black_box(&cfg), 0, &j).unwrap())
    });
    g.bench_function("subset", |b| b.iter(|| hilb_subset(black_box(&cfg), &j)));
    g.finish();
}

fn bench_tutte(c: &mut Criterion) {
    let cfg = k4_incidence();
    let mut g = c.benchmark_group("tutte_k4");
    g.bench_function("subset_expansion", |b| b.iter(|| tutte(black_box(&cfg))));
    g.bench_function("deletion_contraction", |b| {
        b.iter(|| tutte_delcon(black_box(&cfg)))
    });
    g.finish();
}

criterion_group!(benches, bench_kernel, bench_span, bench_hilb_routes, bench_tutte);
criterion_main!(benches);
