//! Criterion benchmarks for `matchpoly`; see `benches/`.
