//! Benchmark-only package; see `benches/main.rs` for the criterion suites.
