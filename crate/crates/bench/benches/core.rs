use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use oddplane::bounds::{audit_drawing, sampling_experiment};
use oddplane::io::{parse_drawing, render_svg, serialize_drawing, RenderOptions};
use oddplane::oracle::{exact_crossing_value, EnumerationBudget};
use oddplane::redraw::{hanani_tutte_embed, lemma1_redraw, theorem2_transform};
use oddplane::{Multigraph, Rule, Variant};
use oddplane_bench::{interleaved_loops, k_odd_plane, perturbed_planar};

fn redraw(c: &mut Criterion) {
    let mut g = c.benchmark_group("lemma1");
    for l in [4, 8, 16, 32] {
        let s = interleaved_loops(l);
        g.bench_with_input(BenchmarkId::from_parameter(l), &s, |b, s| b.iter(|| lemma1_redraw(black_box(s))));
    }
    g.finish();

    let mut g = c.benchmark_group("theorem2");
    for n in [8, 12, 16] {
        let d = k_odd_plane(n, 2, 7);
        g.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| b.iter(|| theorem2_transform(black_box(d), 2)));
    }
    g.finish();

    let d = perturbed_planar(20, 8, 3);
    c.bench_function("hanani_tutte_n20", |b| b.iter(|| hanani_tutte_embed(black_box(&d))));
}

fn oracle(c: &mut Criterion) {
    let budget = EnumerationBudget::crossings(1);
    let mut g = c.benchmark_group("exact_cr");
    g.sample_size(10);
    for (name, graph) in [("K5", Multigraph::complete(5)), ("K3,3", Multigraph::complete_bipartite(3, 3))] {
        g.bench_function(name, |b| b.iter(|| exact_crossing_value(black_box(&graph), Variant::Cr, Rule::Zero, &budget)));
    }
    g.finish();
}

fn audit_and_io(c: &mut Criterion) {
    let d = k_odd_plane(12, 1, 5);
    c.bench_function("audit_n12", |b| b.iter(|| audit_drawing(black_box(&d), 1)));
    c.bench_function("sample_1e4", |b| b.iter(|| sampling_experiment(black_box(&d), 0.5, 10_000, 1)));
    let bytes = serialize_drawing(&d);
    c.bench_function("serialize_n12", |b| b.iter(|| serialize_drawing(black_box(&d))));
    c.bench_function("parse_n12", |b| b.iter(|| parse_drawing(black_box(&bytes))));
    c.bench_function("render_n12", |b| b.iter(|| render_svg(black_box(&d), &RenderOptions::default())));
}

criterion_group!(benches, redraw, oracle, audit_and_io);
criterion_main!(benches);
