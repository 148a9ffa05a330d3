//! Criterion benchmarks for the H₃ toolkit live in `benches/`.
