use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use terncode_core::{canonical_form, count_t, Classifier, LinearCode};

fn extended_golay() -> LinearCode {
    LinearCode::from_strs(&[
        "100000011111",
        "010000101221",
        "001000110122",
        "000100121012",
        "000010122101",
        "000001112210",
    ])
    .unwrap()
}

fn bench_canonical_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("canonical_form");
    let tetracode = LinearCode::from_strs(&["1011", "0112"]).unwrap();
    group.bench_function("tetracode", |b| b.iter(|| canonical_form(black_box(&tetracode)).unwrap()));
    let golay = extended_golay();
    assert!(golay.is_self_dual());
    group.bench_function("golay12", |b| b.iter(|| canonical_form(black_box(&golay)).unwrap()));
    group.finish();
}

fn bench_count(c: &mut Criterion) {
    c.bench_function("count_t_25_12", |b| b.iter(|| count_t(black_box(25), black_box(12)).unwrap()));
}

fn bench_classify(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_maximal");
    group.sample_size(10);
    for n in [8, 10, 12] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| Classifier::new().classify_maximal(n).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_canonical_form, bench_count, bench_classify);
criterion_main!(benches);
