//! Criterion benchmarks for the exact kernel and the geometry pipeline; see
//! `benches/kernel.rs`.
