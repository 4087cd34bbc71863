//! Criterion benchmarks for homlab live in `benches/`.
