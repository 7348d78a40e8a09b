use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sponge_core::generators::{gen_model_sponge, gen_trivalent_sponges};
use sponge_core::poset::check_cohen_macaulay;
use sponge_core::search::{scan, ScanItem};
use sponge_core::sponge::local_cohomology_all;
use sponge_core::{Coefficients, Strategy};

const STRATEGIES: [(&str, Strategy); 2] = [
    ("sequential", Strategy::Sequential),
    ("parallel", Strategy::Parallel),
];

fn cohen_macaulay(c: &mut Criterion) {
    let z = gen_model_sponge(5).unwrap();
    let mut group = c.benchmark_group("cohen_macaulay_model5");
    group.sample_size(10);
    for (name, s) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| {
            b.iter(|| check_cohen_macaulay(z.faces(), Coefficients::Integers, s))
        });
    }
    group.finish();
}

fn local_cohomology(c: &mut Criterion) {
    let z = gen_model_sponge(5).unwrap();
    let mut group = c.benchmark_group("local_cohomology_model5");
    group.sample_size(10);
    for (name, s) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| {
            b.iter(|| local_cohomology_all(&z, Coefficients::Integers, s))
        });
    }
    group.finish();
}

fn trivalent_scan(c: &mut Criterion) {
    let items: Vec<ScanItem> = gen_trivalent_sponges(10)
        .unwrap()
        .into_iter()
        .map(|(g, sponge)| ScanItem {
            id: g.code(),
            sponge,
        })
        .collect();
    let mut group = c.benchmark_group("trivalent_scan_10");
    group.sample_size(10);
    for (name, s) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| {
            b.iter(|| scan(&items, s, None).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, cohen_macaulay, local_cohomology, trivalent_scan);
criterion_main!(benches);
