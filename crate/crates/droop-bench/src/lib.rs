//! Benchmark-only crate; see `benches/droop.rs`.
