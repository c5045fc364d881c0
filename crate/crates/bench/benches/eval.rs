use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use esparql_bench::random_cases;
use esparql_core::fixtures::{self, DATA_BASE};
use esparql_core::logic::reduce;
use esparql_core::oracle::oracle_eval;
use esparql_core::syntax::compile_query;
use esparql_core::{eval, BeliefVocabulary, EvalMode, FourOperator, FourValue};

fn use_cases(c: &mut Criterion) {
    let vocab = BeliefVocabulary::default();
    let g = fixtures::table1(&vocab);
    let mut group = c.benchmark_group("use_cases");
    for (name, q) in [
        ("u1", fixtures::u1()),
        ("u2", fixtures::u2()),
        ("u3", fixtures::u3()),
        ("u4", fixtures::u4()),
    ] {
        group.bench_function(name, |b| {
            b.iter(|| eval(black_box(&q), &g, &vocab, EvalMode::ActiveDomain).unwrap())
        });
    }
    group.bench_function("parse_u2", |b| {
        b.iter(|| compile_query(black_box(fixtures::files::U2), DATA_BASE).unwrap())
    });
    group.finish();
}

fn engine_vs_oracle(c: &mut Criterion) {
    let vocab = BeliefVocabulary::default();
    let cases: Vec<_> = random_cases(42, 200, &vocab)
        .into_iter()
        .filter(|(g, q)| oracle_eval(q, g, &vocab).is_ok())
        .take(20)
        .collect();
    let mut group = c.benchmark_group("random_cases");
    group.bench_function("engine", |b| {
        b.iter(|| {
            for (g, q) in &cases {
                black_box(eval(q, g, &vocab, EvalMode::ActiveDomain).unwrap());
            }
        })
    });
    group.bench_function("oracle", |b| {
        b.iter(|| {
            for (g, q) in &cases {
                black_box(oracle_eval(q, g, &vocab).unwrap());
            }
        })
    });
    group.finish();
}

fn lattice(c: &mut Criterion) {
    let values: Vec<FourValue> = (0..4096).map(|i| FourValue::ALL[(i * 7 + i / 3) % 4]).collect();
    c.bench_function("reduce_4096", |b| {
        b.iter(|| {
            for op in FourOperator::ALL {
                black_box(reduce(op, values.iter().copied()));
            }
        })
    });
}

criterion_group!(benches, use_cases, engine_vs_oracle, lattice);
criterion_main!(benches);
