//! Criterion benchmarks for sgspec live under `benches/`.
