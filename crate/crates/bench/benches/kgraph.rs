use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use kgraph_bench::{random_matrix, random_path};
use kgraph_core::{
    canonical_functor, equal_in_g, fixtures, injectivity_report, smith_normal_form, Budget, Degree, GWord, KGraph,
};

fn single_vertex() -> KGraph {
    let (sk, sq) = fixtures::single_vertex();
    KGraph::new(sk, sq).unwrap()
}

fn normalize(c: &mut Criterion) {
    let kg = single_vertex();
    let mut group = c.benchmark_group("normalize");
    for len in [8, 32, 128] {
        let p = random_path(&kg, len, 7);
        group.bench_with_input(BenchmarkId::from_parameter(len), &p, |b, p| b.iter(|| kg.normalize(p)));
    }
    group.finish();
}

fn equality(c: &mut Criterion) {
    let kg = single_vertex();
    let sys = kg.system();
    let sk = kg.skeleton();
    let word = |t: &str| GWord::parse(sk, t, None).unwrap();
    c.bench_function("equal_in_g/a=b", |b| {
        b.iter(|| equal_in_g(sys, &word("a"), &word("b"), Budget::default()))
    });
    let p = random_path(&kg, 4, 3);
    let w = canonical_functor(&kg.normalize(&p));
    let shuffled = GWord::from_path(&p);
    c.bench_function("equal_in_g/shuffle-4", |b| {
        b.iter(|| equal_in_g(sys, &w, &shuffled, Budget::default()))
    });
}

fn snf(c: &mut Criterion) {
    let mut group = c.benchmark_group("smith_normal_form");
    for n in [4, 8, 16] {
        let m = random_matrix(n, n, 1_000_000, n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| smith_normal_form(m))
        });
    }
    group.finish();
}

fn injectivity(c: &mut Criterion) {
    let kg = single_vertex();
    let mut group = c.benchmark_group("injectivity_report");
    group.sample_size(10);
    for d in [1, 2] {
        let bound = Degree::new(vec![d, d]);
        group.bench_with_input(BenchmarkId::from_parameter(d), &bound, |b, bound| {
            b.iter(|| injectivity_report(&kg, bound, Budget::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, normalize, equality, snf, injectivity);
criterion_main!(benches);
