use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dccode::harness::decode_stream;
use dccode::{rs_bounded_decode, WindecConfig};
use dccode_bench::{code, corrupted_stream};

fn rs_decode(c: &mut Criterion) {
    let mut group = c.benchmark_group("rs_bounded_decode");
    for (q, k) in [(5u32, 1usize), (16, 2), (32, 4)] {
        let code = code(q, k, 1);
        let stack = code.stack(0);
        let mut word = stack.encode(&vec![1; stack.dimension()]);
        for pos in 0..stack.radius() {
            word[2 * pos] = code.field().add(word[2 * pos], 1);
        }
        group.bench_with_input(BenchmarkId::from_parameter(format!("q{q}_k{k}")), &word, |b, w| {
            b.iter(|| rs_bounded_decode(black_box(w), stack).unwrap())
        });
    }
    group.finish();
}

fn sliding(c: &mut Criterion) {
    let mut group = c.benchmark_group("sliding_decode");
    group.sample_size(20);
    for (q, k, m) in [(5u32, 1usize, 2usize), (7, 2, 2), (16, 2, 3)] {
        let code = code(q, k, m);
        let rx = corrupted_stream(&code, 100, 1);
        let cfg = WindecConfig::default();
        group.bench_with_input(BenchmarkId::from_parameter(format!("q{q}_k{k}_m{m}")), &rx, |b, rx| {
            b.iter(|| decode_stream(&code, black_box(rx), &cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, rs_decode, sliding);
criterion_main!(benches);
