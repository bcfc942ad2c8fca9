//! Criterion benchmarks for `graphop-core` live in `benches/`.
