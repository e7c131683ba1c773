use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use pencil_bench::{frobenius_samples, presented, xy};
use pencil_core::io::reproduce_table;
use pencil_core::{classify_frob4, normal_check, Field, FreePoly, GroebnerBasis};

fn groebner(c: &mut Criterion) {
    let mut g = c.benchmark_group("groebner");
    for (name, rels) in [
        ("jordan", &["x*y - y*x + y^2"][..]),
        ("x2", &["x^2"][..]),
        ("pencil", &["x^2 + y^2", "x*y + y*x"][..]),
        ("cubic", &["x^2*y - y*x^2", "x*y^2 - y^2*x"][..]),
    ] {
        let polys: Vec<FreePoly> = rels.iter().map(|r| FreePoly::parse(r, &xy(), Field::Rationals).unwrap()).collect();
        g.bench_with_input(BenchmarkId::from_parameter(name), &polys, |b, p| {
            b.iter(|| GroebnerBasis::complete_in(&xy(), Field::Rationals, black_box(p), 12).unwrap())
        });
    }
    g.finish();
}

fn hilbert(c: &mut Criterion) {
    let a = presented(&["x^2*y - y*x^2", "x*y^2 - y^2*x"], 12);
    c.bench_function("hilbert/truncated-12", |b| b.iter(|| a.hilbert(black_box(12)).unwrap()));
    let j = presented(&["x*y - y*x + y^2"], 12);
    c.bench_function("hilbert/rational", |b| b.iter(|| j.hilbert_rational().unwrap()));
}

fn normality(c: &mut Criterion) {
    let a = presented(&["x*y - y*x + y^2"], 12);
    let f = a.parse("y^2").unwrap();
    c.bench_function("normal_check/jordan-y2", |b| b.iter(|| normal_check(&a, black_box(&f)).unwrap()));
}

fn classify(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify_frob4");
    for (name, alg) in frobenius_samples() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &alg, |b, r| b.iter(|| classify_frob4(black_box(r)).unwrap()));
    }
    g.finish();
}

fn tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("reproduce_table");
    g.sample_size(10);
    for id in 1..=5 {
        g.bench_with_input(BenchmarkId::from_parameter(id), &id, |b, &id| b.iter(|| reproduce_table(id, 12).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, groebner, hilbert, normality, classify, tables);
criterion_main!(benches);
