//! Benchmarks for the formalq engines live under `benches/`.
