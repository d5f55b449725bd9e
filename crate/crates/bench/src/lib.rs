//! Criterion benchmarks for the ring grooming solvers live in `benches/`.
