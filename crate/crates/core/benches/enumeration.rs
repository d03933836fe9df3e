use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dsc_core::relations::{count_closed_sets_parallel, count_closed_sets_sequential, BinaryRelation};
use dsc_core::BitSet;
use std::hint::black_box;

fn to_relation(n: usize, set: &BitSet) -> BinaryRelation {
    BinaryRelation::from_pairs(n, set.iter().map(|x| (x / n, x % n)))
}

fn to_bits(rel: &BinaryRelation) -> BitSet {
    let n = rel.size();
    BitSet::from_indices(n * n, rel.pairs().map(|(i, j)| i * n + j))
}

/// Equivalence closure on pairs; its closed sets are the partitions of `n`.
fn equivalence_closure(n: usize) -> impl Fn(&BitSet) -> BitSet + Sync {
    move |set| {
        let mut rel = to_relation(n, set);
        for i in 0..n {
            rel.insert(i, i);
        }
        to_bits(&rel.equivalence_closure())
    }
}

/// Congruence closure for the semigroup with the given table.
fn congruence_closure(table: Vec<Vec<usize>>) -> impl Fn(&BitSet) -> BitSet + Sync {
    let n = table.len();
    move |set| {
        let mut rel = to_relation(n, set).union(&BinaryRelation::diagonal(n));
        loop {
            let mut next = rel.equivalence_closure();
            let pairs: Vec<_> = next.pairs().collect();
            for (a, b) in pairs {
                for c in 0..n {
                    next.insert(table[a][c], table[b][c]);
                    next.insert(table[c][a], table[c][b]);
                }
            }
            if next == rel {
                return to_bits(&rel);
            }
            rel = next;
        }
    }
}

fn rectangular_band(a: usize, b: usize) -> Vec<Vec<usize>> {
    let n = a * b;
    (0..n)
        .map(|x| (0..n).map(|y| (x / b) * b + y % b).collect())
        .collect()
}

fn bench_partitions(c: &mut Criterion) {
    let mut group = c.benchmark_group("partitions");
    group.sample_size(10);
    for n in [5usize, 6, 7] {
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |bench, &n| {
            bench.iter(|| count_closed_sets_sequential(n * n, equivalence_closure(black_box(n))))
        });
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |bench, &n| {
            bench.iter(|| count_closed_sets_parallel(n * n, equivalence_closure(black_box(n))))
        });
    }
    group.finish();
}

fn bench_congruences(c: &mut Criterion) {
    let mut group = c.benchmark_group("band_congruences");
    group.sample_size(10);
    for (a, b) in [(2usize, 2usize), (2, 3)] {
        let label = format!("{a}x{b}");
        let n = a * b;
        group.bench_function(BenchmarkId::new("sequential", &label), |bench| {
            bench.iter(|| count_closed_sets_sequential(n * n, congruence_closure(rectangular_band(a, b))))
        });
        group.bench_function(BenchmarkId::new("parallel", &label), |bench| {
            bench.iter(|| count_closed_sets_parallel(n * n, congruence_closure(rectangular_band(a, b))))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_partitions, bench_congruences);
criterion_main!(benches);
