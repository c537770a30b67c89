use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use xplain_bench::{circuit_workload, monotone_workload};
use xplain_core::frp::ddnnf::{decide_relevancy, encode_problem};
use xplain_core::frp::mono::{decide_relevancy_mono, MonoConfig};
use xplain_core::frp::SatBackend;
use xplain_core::xp::{extract_axp, is_necessary};
use xplain_core::FeatureSet;

fn circuit_relevancy(c: &mut Criterion) {
    let mut group = c.benchmark_group("ddnnf_relevancy");
    group.sample_size(20);
    for (m, depth, min_nodes) in [(30, 4, 200), (120, 5, 1500), (220, 5, 3000)] {
        let p = circuit_workload(1, m, depth, min_nodes);
        let label = format!("m{m}_n{}", p.circuit().num_nodes());
        group.bench_with_input(BenchmarkId::new("encode", &label), &p, |b, p| {
            b.iter(|| encode_problem(p, black_box(1)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("decide", &label), &p, |b, p| {
            let mut t = 0;
            b.iter(|| {
                t = t % m + 1;
                decide_relevancy(p, t, &SatBackend::default()).unwrap()
            })
        });
    }
    group.finish();
}

fn circuit_axp(c: &mut Criterion) {
    let p = circuit_workload(3, 60, 4, 500);
    let full = FeatureSet::full(60);
    c.bench_function("ddnnf_extract_axp_m60", |b| b.iter(|| extract_axp(&p, &full).unwrap()));
    c.bench_function("ddnnf_necessity_m60", |b| b.iter(|| is_necessary(&p, black_box(7)).unwrap()));
}

fn monotone_relevancy(c: &mut Criterion) {
    let mut group = c.benchmark_group("monotone_relevancy");
    for m in [8, 12, 16] {
        let p = monotone_workload(5, m, 3);
        for shrink in [false, true] {
            let config = MonoConfig {
                shrink,
                ..MonoConfig::default()
            };
            let id = BenchmarkId::new(if shrink { "shrink" } else { "plain" }, m);
            group.bench_with_input(id, &p, |b, p| {
                let mut t = 0;
                b.iter(|| {
                    t = t % m + 1;
                    decide_relevancy_mono(p, t, &config).unwrap()
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, circuit_relevancy, circuit_axp, monotone_relevancy);
criterion_main!(benches);
