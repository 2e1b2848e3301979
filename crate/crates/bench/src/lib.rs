//! Benchmark-only crate; see `benches/signal_chain.rs`.
