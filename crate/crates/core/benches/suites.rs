use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use oagw_core::exec::Executor;
use oagw_core::oag::Construction;
use oagw_core::suite::{run_suite, SuiteOptions};

fn executors(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    for (suite, samples) in [("psi-vs-search", 40), ("hprime-descriptor", 40), ("embedding-laws", 2000)] {
        for exec in [Executor::Sequential, Executor::Parallel] {
            let opts = SuiteOptions::default()
                .with_construction(Construction::Lambda)
                .with_samples(samples)
                .with_executor(exec);
            group.bench_with_input(BenchmarkId::new(suite, format!("{exec:?}")), &opts, |b, o| {
                b.iter(|| run_suite(suite, o).expect("suite runs"))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, executors);
criterion_main!(benches);
