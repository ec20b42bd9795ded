//! Criterion benchmarks for `gaussdm`; see `benches/core_ops.rs`.
