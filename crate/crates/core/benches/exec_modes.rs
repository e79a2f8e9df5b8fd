use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use equipart::curve::make_builtin_curve;
use equipart::fixtures::random_open_polyline;
use equipart::simplex::{face_maps, lemma_a_probe};
use equipart::{
    brute_force_min_residual, ChordEvaluator, Exec, OracleOptions, Permutation, SemiMetric, Weights,
};

fn bench_oracle(c: &mut Criterion) {
    let ev = ChordEvaluator::new(random_open_polyline(0, 16, 2), SemiMetric::euclidean()).unwrap();
    let mut group = c.benchmark_group("oracle_n4_m101");
    group.sample_size(20);
    for exec in Exec::available() {
        let opts = OracleOptions {
            exec,
            ..OracleOptions::default()
        };
        group.bench_with_input(
            BenchmarkId::from_parameter(exec.name()),
            &opts,
            |b, opts| {
                b.iter(|| {
                    brute_force_min_residual(&ev, 4, &Weights::uniform(4), 101, opts).unwrap()
                })
            },
        );
    }
    group.finish();
}

fn bench_oracle_arc(c: &mut Criterion) {
    let ev = ChordEvaluator::new(
        make_builtin_curve("circle(1,0.75)").unwrap(),
        SemiMetric::euclidean(),
    )
    .unwrap();
    let mut group = c.benchmark_group("oracle_n3_m2001");
    group.sample_size(10);
    for exec in Exec::available() {
        let opts = OracleOptions {
            exec,
            ..OracleOptions::default()
        };
        group.bench_with_input(
            BenchmarkId::from_parameter(exec.name()),
            &opts,
            |b, opts| {
                b.iter(|| {
                    brute_force_min_residual(&ev, 3, &Weights::uniform(3), 2001, opts).unwrap()
                })
            },
        );
    }
    group.finish();
}

fn bench_lemma_probe(c: &mut Criterion) {
    let tau = Permutation::cyclic_shift(4);
    let phi = face_maps::power(2.0);
    let mut group = c.benchmark_group("lemma_probe_n4_m40");
    for exec in Exec::available() {
        group.bench_with_input(
            BenchmarkId::from_parameter(exec.name()),
            &exec,
            |b, &exec| b.iter(|| lemma_a_probe(4, &tau, &phi, 40, exec).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_oracle, bench_oracle_arc, bench_lemma_probe);
criterion_main!(benches);
