//! Benchmark-only crate; see benches/solvers.rs.
