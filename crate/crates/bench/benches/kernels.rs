use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hardpart::complex::{alternating_sum, alternating_sum_enumerated, independence_complex};
use hardpart::genfun::{build_tpm, stripped_charpoly};
use hardpart::grid::build_square_cyl;
use hardpart::transfer::{build_transfer_square, char_poly};
use hardpart::homology_profile;
use std::hint::black_box;

fn alternating_sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("alternating_sum");
    for (m, n) in [(4, 5), (5, 5)] {
        let graph = build_square_cyl(m, n).unwrap();
        g.bench_with_input(BenchmarkId::new("frontier", format!("{m}x{n}")), &graph, |b, gr| b.iter(|| alternating_sum(black_box(gr)).unwrap()));
        g.bench_with_input(BenchmarkId::new("enumeration", format!("{m}x{n}")), &graph, |b, gr| {
            b.iter(|| alternating_sum_enumerated(black_box(gr)).unwrap())
        });
    }
    g.finish();
}

fn transfer_traces(c: &mut Criterion) {
    let mut g = c.benchmark_group("trace_power");
    for m in [8, 11] {
        let t = build_transfer_square(m).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(m), &t, |b, t| b.iter(|| t.trace_power(black_box(24))));
    }
    g.finish();
}

fn homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("homology_profile");
    g.sample_size(10);
    for (m, n) in [(3, 6), (4, 6)] {
        let cx = independence_complex(&build_square_cyl(m, n).unwrap(), 2_000_000).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(format!("{m}x{n}")), &cx, |b, cx| b.iter(|| homology_profile(black_box(cx))));
    }
    g.finish();
}

fn charpolys(c: &mut Criterion) {
    let mut g = c.benchmark_group("charpoly");
    let t = build_transfer_square(8).unwrap();
    g.bench_function("square_cyl_8", |b| b.iter(|| char_poly(black_box(&t))));
    let tp = build_tpm(6).unwrap();
    g.bench_function("tpm_6", |b| b.iter(|| stripped_charpoly(black_box(&tp))));
    g.finish();
}

criterion_group!(benches, alternating_sums, transfer_traces, homology, charpolys);
criterion_main!(benches);
