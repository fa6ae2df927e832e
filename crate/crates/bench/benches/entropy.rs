use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use primeinfo::asymptotics::{geometric_schedule, run_sweep};
use primeinfo::info::{entropy_decomposition_sum, kl_divergence};
use primeinfo::{DiscreteDist, Geometric, LogBase, PrimeTable, ValuationDist, WeightMode};

fn decomposition(c: &mut Criterion) {
    let table = PrimeTable::sieve(10_000_000).unwrap();
    let mut g = c.benchmark_group("entropy_decomposition");
    for n in [10_000u64, 1_000_000, 10_000_000] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| entropy_decomposition_sum(n, &table, LogBase::E).unwrap())
        });
    }
    g.finish();

    let schedule = geometric_schedule(100, 10_000_000, 10).unwrap();
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    g.bench_function("1e2..1e7", |b| {
        b.iter(|| run_sweep(&schedule, &table, LogBase::E, WeightMode::Ideal).unwrap())
    });
    g.finish();
}

fn divergence(c: &mut Criterion) {
    let dist = ValuationDist::exact(2, 1_000_000).unwrap();
    let exact = DiscreteDist::from(&dist);
    let model = Geometric::from_mean(&dist.mean()).unwrap();
    c.bench_function("kl/p=2,N=1e6", |b| {
        b.iter(|| kl_divergence(&exact, &model, LogBase::E).unwrap())
    });
}

criterion_group!(benches, decomposition, divergence);
criterion_main!(benches);
