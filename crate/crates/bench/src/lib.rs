//! Criterion benchmarks for the penult engine; see `benches/penult.rs`.
