use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pathatlas::harness::{find, Exec, SuiteConfig};

const SUITES: [(&str, u64); 4] = [("concat-isometry", 2_000), ("atlas-roundtrip", 100), ("openness", 5), ("transition-smoothness", 4)];

fn executors(c: &mut Criterion) {
    let mut group = c.benchmark_group("corpus");
    group.sample_size(10);
    for (name, count) in SUITES {
        let suite = find(name).unwrap();
        for (label, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
            let cfg = SuiteConfig { exec, ..SuiteConfig::new(1, count) };
            group.bench_with_input(BenchmarkId::new(name, label), &cfg, |b, cfg| b.iter(|| suite.run(cfg)));
        }
    }
    group.finish();
}

criterion_group!(benches, executors);
criterion_main!(benches);
