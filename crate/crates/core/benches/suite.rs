use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use ordtopo_core::lab::{oracle_search, run_suite_exec, Exec, RunConfig, Which};

fn suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    for trials in [32, 128] {
        let cfg = RunConfig { seed: 1, max_size: 7, trials, which: Which::all(), ..RunConfig::default() };
        group.bench_with_input(BenchmarkId::new("sequential", trials), &cfg, |b, cfg| {
            b.iter(|| run_suite_exec(black_box(cfg), Exec::Sequential).unwrap())
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", trials), &cfg, |b, cfg| {
            b.iter(|| run_suite_exec(black_box(cfg), Exec::Parallel).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let cfg = RunConfig { seed: 1, max_size: 7, trials: 64, ..RunConfig::default() };
    c.bench_function("oracle/64", |b| b.iter(|| oracle_search(black_box(&cfg)).unwrap()));
}

criterion_group!(benches, suite, oracle);
criterion_main!(benches);
