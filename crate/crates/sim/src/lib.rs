//! Scenario runner for `dude-core`: JSON configuration, deterministic parallel
//! drop execution, comparison presets, report files and the `dude-sim` CLI.

pub mod cli;
pub mod config_io;
pub mod error;
pub mod format;
pub mod output;
pub mod preset;
pub mod runner;

pub use error::SimError;
