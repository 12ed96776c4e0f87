//! Experiments on top of `surfacelab-core`: seeded parallel memory runs,
//! Wilson intervals, threshold crossings, result tables with provenance,
//! floorplan documents and the `surfacelab` CLI.

pub mod cli;
pub mod config;
pub mod error;
pub mod floorplan;
pub mod reports;
pub mod runner;
pub mod stats;
pub mod table;
pub mod threshold;

pub use error::{LabError, Result};
pub use surfacelab_core as core;
