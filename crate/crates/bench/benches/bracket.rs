use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use tanglekit::bracket::{bracket_contfrac, bracket_tangle_oracle, determinant};
use tanglekit::diagram::build_standard;
use tanglekit_bench::{spread, twos};

fn recursive(c: &mut Criterion) {
    let mut g = c.benchmark_group("bracket_contfrac");
    for len in [3, 9, 27] {
        let cf = twos(len);
        g.bench_with_input(BenchmarkId::from_parameter(len * 2), &cf, |b, cf| {
            b.iter(|| bracket_contfrac(black_box(cf)))
        });
    }
    g.finish();
}

// State sums are exponential, so keep the diagrams small.
fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("bracket_oracle");
    g.sample_size(20);
    for len in [2, 4, 6] {
        let d = build_standard(&twos(len)).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(len * 2), &d, |b, d| {
            b.iter(|| bracket_tangle_oracle(black_box(d)).unwrap())
        });
    }
    g.finish();
}

fn det(c: &mut Criterion) {
    let closed: Vec<_> = spread(9)
        .iter()
        .map(|cf| build_standard(cf).unwrap().numerator().unwrap())
        .collect();
    c.bench_function("determinant_9_crossings", |b| {
        b.iter(|| {
            for d in &closed {
                black_box(determinant(d).unwrap());
            }
        })
    });
}

criterion_group!(benches, recursive, oracle, det);
criterion_main!(benches);
