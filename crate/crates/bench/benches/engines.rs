use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use formalq::hamiltonian::{formal_quantisation_series, vector_partition, LinearModel};
use formalq::repring::{tensor_decompose, weight_multiplicities};
use formalq::{Rational64, RootDatum, Weight};

fn freudenthal(c: &mut Criterion) {
    let cases = [("A2", vec![4, 3]), ("B2", vec![3, 3]), ("A3", vec![2, 1, 2])];
    let mut group = c.benchmark_group("freudenthal");
    for (label, lambda) in cases {
        let rd = RootDatum::parse(label).unwrap();
        let lambda = Weight(lambda);
        group.bench_function(label, |b| b.iter(|| weight_multiplicities(&rd, black_box(&lambda)).unwrap()));
    }
    group.finish();
}

fn klimyk(c: &mut Criterion) {
    let cases = [("A2", vec![3, 2], vec![2, 3]), ("C2", vec![2, 2], vec![3, 1])];
    let mut group = c.benchmark_group("tensor");
    for (label, l, m) in cases {
        let rd = RootDatum::parse(label).unwrap();
        let (l, m) = (Weight(l), Weight(m));
        group.bench_function(label, |b| b.iter(|| tensor_decompose(&rd, black_box(&l), black_box(&m)).unwrap()));
    }
    group.finish();
}

fn partitions(c: &mut Criterion) {
    let a = vec![vec![1, 0, 1, 1, 2], vec![0, 1, 1, 2, 1]];
    c.bench_function("vector_partition", |b| b.iter(|| vector_partition(black_box(&a), &[14, 13]).unwrap()));
}

fn quantisation(c: &mut Criterion) {
    let su2 = LinearModel::su2_standard();
    let torus = LinearModel::torus_identity(2);
    let r = Rational64::from_integer(40);
    c.bench_function("quantise_su2", |b| {
        b.iter(|| formal_quantisation_series(&su2).unwrap().truncate(black_box(r)))
    });
    c.bench_function("quantise_t2", |b| {
        b.iter(|| formal_quantisation_series(&torus).unwrap().truncate(black_box(r)))
    });
}

criterion_group!(benches, freudenthal, klimyk, partitions, quantisation);
criterion_main!(benches);
