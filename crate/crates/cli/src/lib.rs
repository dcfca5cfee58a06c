//! The `factorum` command line: instance file format, reproducible
//! generators, randomized verification suites, and command dispatch.

pub mod app;
pub mod format;
pub mod gen;
pub mod verify;
