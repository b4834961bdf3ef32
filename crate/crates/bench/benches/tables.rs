use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use galoisirr::corpus::corpus_group;
use galoisirr::{character_table, classify};

const GROUPS: &[&str] = &["S4", "SL(2,3)", "C3^2:Q8", "Heis3:Q8"];
const SEED: u64 = 0xC0FFEE;

fn tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("character_table");
    group.sample_size(10);
    for &name in GROUPS {
        let g = corpus_group(name).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| character_table(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    group.sample_size(10);
    for &name in GROUPS {
        let g = corpus_group(name).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| classify(black_box(g), SEED).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, tables, classification);
criterion_main!(benches);
