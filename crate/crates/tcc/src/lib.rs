//! Standard-library companion of `tcc-core`: text formats, the G_t cache,
//! SVG rendering, wall-clock budgets, threaded search and the `tcc`
//! command line.

pub mod cli;
pub mod formats;
pub mod gt_cache;
pub mod runtime;
pub mod svg;
