//! Benchmark harness for the membership deciders and the rasterizer; the
//! measurements live in `benches/deciders.rs`.
