//! Benchmark-only crate; see benches/algebra.rs.
