//! File formats, experiment sweeps, SVG rendering and the command line for
//! double-tree shortcutting experiments, on top of `dtlab-core`.

pub mod cli;
pub mod experiment;
pub mod formats;
pub mod selftest;
pub mod sidecar;
pub mod svg;
pub mod tsplib;
