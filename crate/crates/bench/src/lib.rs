//! Benchmarks only; see `benches/ops.rs`.
