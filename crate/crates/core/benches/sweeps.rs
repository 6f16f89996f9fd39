use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use equitiler::decider::DecideOptions;
use equitiler::sweep::{sweep_connected, sweep_labeled, Mode};

fn labeled(c: &mut Criterion) {
    let opts = DecideOptions::default();
    let mut group = c.benchmark_group("labeled-sweep");
    group.sample_size(10);
    for mode in [Mode::Equivalence, Mode::Dichotomy] {
        for (variant, parallel) in [("sequential", false), ("parallel", true)] {
            group.bench_with_input(BenchmarkId::new(format!("{mode:?}"), variant), &parallel, |b, &parallel| {
                b.iter(|| sweep_labeled(mode, 5, &opts, parallel).unwrap())
            });
        }
    }
    group.finish();
}

fn connected(c: &mut Criterion) {
    let opts = DecideOptions::default();
    let mut group = c.benchmark_group("connected-sweep");
    group.sample_size(10);
    for (variant, parallel) in [("sequential", false), ("parallel", true)] {
        group.bench_function(BenchmarkId::new("Clw", variant), |b| b.iter(|| sweep_connected(Mode::Clw, 6, &opts, parallel).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, labeled, connected);
criterion_main!(benches);
