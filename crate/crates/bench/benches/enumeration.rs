use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use taxotopy::galois::enumerate_adjunctions;
use taxotopy::{lambda, Limits};
use taxotopy_bench::{corpus, named};

fn adjunctions(c: &mut Criterion) {
    let lim = Limits::default();
    let mut g = c.benchmark_group("adjunctions/corpus");
    for n in 3..=5 {
        let ps = corpus(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &ps, |b, ps| {
            b.iter(|| {
                ps.iter()
                    .map(|p| enumerate_adjunctions(black_box(p), &lim).unwrap().len())
                    .sum::<usize>()
            })
        });
    }
    g.finish();
}

fn lambda_named(c: &mut Criterion) {
    let lim = Limits::default();
    let mut g = c.benchmark_group("lambda/named");
    g.sample_size(20);
    for (name, p) in named() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &p, |b, p| {
            b.iter(|| lambda(black_box(p), &lim).unwrap().class_count())
        });
    }
    g.finish();
}

criterion_group!(benches, adjunctions, lambda_named);
criterion_main!(benches);
