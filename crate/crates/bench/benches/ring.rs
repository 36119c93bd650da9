use criterion::{criterion_group, criterion_main, Criterion};

use hilbgw::chow_ring::{build_cup_table, CohomologyRing};
use hilbgw::quantum::{Bounds, QuantumRing};
use hilbgw::Engine;

fn ring(c: &mut Criterion) {
    c.bench_function("build_cup_table", |b| b.iter(|| build_cup_table().unwrap()));
    c.bench_function("validate_ring", |b| b.iter(|| CohomologyRing::hilb2().unwrap()));
}

fn quantum(c: &mut Criterion) {
    let mut group = c.benchmark_group("quantum");
    group.sample_size(10);
    group.bench_function("product_table_4_2", |b| {
        b.iter(|| {
            let e = Engine::hilb2();
            QuantumRing::new(&e, Bounds::new(4, 2)).verify_product_table().unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, ring, quantum);
criterion_main!(benches);
