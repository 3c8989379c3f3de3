//! Criterion benchmarks for `ratile-core`; run with `cargo bench -p ratile-bench`.
