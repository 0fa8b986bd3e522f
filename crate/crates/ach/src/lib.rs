//! Standard-library companion of `ach-core`: CSV and JSON formats,
//! thread-parallel scoring and the `ach` command-line tool.

pub mod cli;
pub mod io;
pub mod parallel;

pub use parallel::ParallelScorer;
