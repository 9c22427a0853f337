//! Criterion benchmarks for `t237` live in `benches/`.
