//! Benchmarks for the argshift pipeline; see `benches/`.
