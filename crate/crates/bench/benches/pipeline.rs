use std::collections::BTreeSet;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use pdlsl::extract::{extract, ExtractOptions};
use pdlsl::fixtures::{route_lexicon_text, route_model, ROUTE_FORMULA};
use pdlsl::{parse_formula, parse_lexicon, verify, Handedness, PlaceMap};
use pdlsl_bench::{long_sequence, nested_box, ring_model};

fn parsing(c: &mut Criterion) {
    c.bench_function("parse route formula", |b| b.iter(|| parse_formula(black_box(ROUTE_FORMULA)).unwrap()));
}

fn evaluation(c: &mut Criterion) {
    let mut group = c.benchmark_group("eval nested star box");
    for n in [8, 64, 256] {
        let m = ring_model(n);
        let phi = nested_box(3);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| m.eval_all(&phi).unwrap()));
    }
    group.finish();

    let m = route_model();
    let lex = parse_lexicon(&route_lexicon_text()).unwrap();
    c.bench_function("verify route", |b| b.iter(|| verify(&m, &lex, Handedness::RightDominant).unwrap()));
}

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("star closure");
    for n in [16, 128, 512] {
        let r = ring_model(n).relation().clone();
        group.bench_with_input(BenchmarkId::from_parameter(n), &r, |b, r| b.iter(|| r.star()));
    }
    group.finish();
}

fn segmentation(c: &mut Criterion) {
    let seq = long_sequence(50);
    let map = PlaceMap::default();
    c.bench_function("extract 50 postures", |b| {
        b.iter(|| extract(&seq, &ExtractOptions::default(), &map, &BTreeSet::new()).unwrap())
    });
}

criterion_group!(benches, parsing, evaluation, closure, segmentation);
criterion_main!(benches);
