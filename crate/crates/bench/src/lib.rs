//! Criterion benchmarks for the engine, isomorphism test and catalog; see `benches/`.
