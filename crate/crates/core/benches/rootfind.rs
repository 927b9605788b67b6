//! Algorithm 1 against the score-every-vertex baseline.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rootcast::prufer::random_trees;
use rootcast::rootfind::{logspace_all_subgraphs, naive_root};
use rootcast::{builtin_spec, find_root, NaiveTarget, Tree};

fn roots(c: &mut Criterion) {
    let mut group = c.benchmark_group("find-root");
    group.sample_size(10);
    let logspace = logspace_all_subgraphs();
    let closeness = builtin_spec("closeness").unwrap();
    for n in [1_000usize, 2_000, 4_000, 100_000] {
        let tree: Tree = random_trees(n, 1, n as u64).unwrap().next().unwrap();
        group.bench_with_input(BenchmarkId::new("algorithm1/all-subgraphs-log", n), &tree, |b, t| {
            b.iter(|| find_root(t, &logspace).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("algorithm1/closeness", n), &tree, |b, t| {
            b.iter(|| find_root(t, &closeness).unwrap())
        });
        if n <= 4_000 {
            group.bench_with_input(BenchmarkId::new("naive/all-subgraphs-log", n), &tree, |b, t| {
                b.iter(|| naive_root(t, NaiveTarget::Spec(&logspace)).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, roots);
criterion_main!(benches);
