use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use spinc4::atlas::{k3, surface_product, ManifoldData};
use spinc4::exec::{map_ordered, Execution};
use spinc4::obstruction::example_scan_with;
use spinc4::spinc::{condition_star, SpinCStructure};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("example_scan");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "SP(5,5)x2 r<=100"), &exec, |b, &exec| {
            b.iter(|| example_scan_with(black_box([(5, 5), (5, 5)]), 1, 100, exec).unwrap())
        });
    }
    group.finish();
}

fn star_batch(c: &mut Criterion) {
    let generators = [k3(), surface_product(3, 1).unwrap(), surface_product(3, 3).unwrap()];
    let sums: Vec<ManifoldData> = (0..64)
        .map(|i| {
            let parts = (0..(2 + i % 4)).map(|j| &generators[(i + j) % generators.len()]);
            ManifoldData::connected_sum_all(parts)
        })
        .collect();
    let mut group = c.benchmark_group("condition_star_batch");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, sums.len()), &exec, |b, &exec| {
            b.iter(|| {
                map_ordered(&sums, exec, |m| {
                    let s = SpinCStructure::canonical(m).unwrap();
                    condition_star(m, &s).unwrap().holds
                })
            })
        });
    }
    group.finish();
}

fn signature(c: &mut Criterion) {
    let m = surface_product(7, 7).unwrap();
    c.bench_function("signature SP(7,7)", |b| b.iter(|| black_box(m.h2()).signature()));
}

criterion_group!(benches, scan, star_batch, signature);
criterion_main!(benches);
