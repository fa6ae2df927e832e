//! Criterion benchmarks for `primeinfo`; see `benches/`.
