//! Criterion benchmarks for ksf-core; see `benches/`.
