use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use treecut::analysis::brute_census;
use treecut::ensemble::sample_map;
use treecut::exec::Exec;
use treecut::reduction::final_size;
use treecut::ReductionMode;

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn census(c: &mut Criterion) {
    let mut g = c.benchmark_group("census");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_with_input(BenchmarkId::new(name, 11), &11usize, |b, &n| {
            b.iter(|| black_box(brute_census(ReductionMode::OldPaths, n, 5, exec).unwrap()))
        });
    }
    g.finish();
}

fn sampling(c: &mut Criterion) {
    let mut g = c.benchmark_group("sample-and-reduce");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_with_input(BenchmarkId::new(name, 1000), &1000usize, |b, &n| {
            b.iter(|| black_box(sample_map(n, 20_000, 7, exec, |t| final_size(&t, ReductionMode::Leaves, 2))))
        });
    }
    g.finish();
}

criterion_group!(benches, census, sampling);
criterion_main!(benches);
