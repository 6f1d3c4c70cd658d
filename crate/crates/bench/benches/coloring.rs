use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use oddcolor::discharging::discharge;
use oddcolor::exact::{exists_odd_k_coloring, SearchConfig};
use oddcolor::minor_closed::odd_color_minor_closed;
use oddcolor::{odd_color_1planar, Thresholds};
use oddcolor_bench::{k7_star, one_plane, outerplanar};

fn exact(c: &mut Criterion) {
    let g = k7_star();
    let cfg = SearchConfig::default();
    let mut group = c.benchmark_group("exact_k7_star");
    for k in [6, 7] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| exists_odd_k_coloring(black_box(&g), k, &cfg).unwrap())
        });
    }
    group.finish();
}

fn reduction(c: &mut Criterion) {
    let t = Thresholds::default();
    let mut group = c.benchmark_group("reduction");
    for n in [60, 250, 1000] {
        let e = one_plane(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &e, |b, e| {
            b.iter(|| odd_color_1planar(black_box(e), &t).unwrap())
        });
    }
    group.finish();
}

fn charges(c: &mut Criterion) {
    let t = Thresholds::default();
    let e = one_plane(250);
    c.bench_function("discharge_250", |b| b.iter(|| discharge(black_box(&e), &t).unwrap()));
}

fn minor_closed(c: &mut Criterion) {
    let g = outerplanar(500);
    c.bench_function("minor_closed_outerplanar_500", |b| {
        b.iter(|| odd_color_minor_closed(black_box(&g), 2).unwrap())
    });
}

criterion_group!(benches, exact, reduction, charges, minor_closed);
criterion_main!(benches);
