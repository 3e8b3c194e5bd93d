//! Criterion benchmarks for the quantization routines; see `benches/`.
