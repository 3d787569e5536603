//! Microbenchmarks for the hot paths: one evolution step, the conserved
//! vector, level-set enumeration, and the divisor and Jacobian maps.
//!
//! Everything runs on the three benchmark levels adopted throughout the
//! test suite so regressions show up against familiar numbers.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use troplab_core::toda::enumerate_isolevel;
use troplab_core::{
    conserved, evolve, pi, psi, ConservedVector, CurveModel, Jacobian, Rational, TodaState,
};

fn golden_state(g: usize) -> TodaState {
    let (q, w): (Vec<i64>, Vec<i64>) = match g {
        1 => (vec![0, 3], vec![2, 3]),
        2 => (vec![0, 1, 2], vec![1, 2, 1]),
        _ => (vec![0, 1, 2, 3], vec![1, 2, 2, 2]),
    };
    TodaState::new(
        q.into_iter().map(Rational::from_int).collect(),
        w.into_iter().map(Rational::from_int).collect(),
    )
    .unwrap()
}

fn bench_evolve(c: &mut Criterion) {
    let mut group = c.benchmark_group("evolve");
    for g in [1usize, 2, 3] {
        let s = golden_state(g);
        group.bench_function(format!("step/g{g}"), |b| {
            b.iter(|| evolve(black_box(&s)).unwrap())
        });
        group.bench_function(format!("conserved/g{g}"), |b| {
            b.iter(|| conserved(black_box(&s)))
        });
    }
    group.finish();
}

fn bench_enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(20);
    for entries in [vec![8i64, 3, 0], vec![7, 3, 1, 0]] {
        let cv = ConservedVector::from_ints(&entries).unwrap();
        let label = entries
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",");
        group.bench_function(format!("isolevel/({label})"), |b| {
            b.iter(|| enumerate_isolevel(black_box(&cv)).unwrap().len())
        });
    }
    group.finish();
}

fn bench_maps(c: &mut Criterion) {
    let mut group = c.benchmark_group("maps");
    let s = golden_state(2);
    let cm = CurveModel::build(&conserved(&s)).unwrap();
    let jac = Jacobian::new(&cm, None).unwrap();
    let d = psi(&cm, &s).unwrap();
    group.bench_function("psi/g2", |b| {
        b.iter(|| psi(black_box(&cm), black_box(&s)).unwrap())
    });
    group.bench_function("eta/g2", |b| {
        b.iter(|| jac.eta(black_box(&d)).unwrap())
    });
    group.bench_function("pi-reduced/g2", |b| {
        b.iter(|| jac.reduce(&pi(&jac, black_box(&s)).unwrap()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_evolve, bench_enumerate, bench_maps);
criterion_main!(benches);
