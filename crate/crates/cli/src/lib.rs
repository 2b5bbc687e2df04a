//! Support library for the `operads` command-line tool: monoid file
//! loading, verification suites and SVG rendering. The binary in `main.rs`
//! is a thin argument layer over these.

pub mod monoid_file;
pub mod render;
pub mod verify;
