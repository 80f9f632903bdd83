//! Benchmarks for loopforge-core live in `benches/`; run them with
//! `cargo bench -p loopforge-bench`.
