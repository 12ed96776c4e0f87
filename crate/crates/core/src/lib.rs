//! Surface-code fault-tolerance algorithms.
//!
//! This crate is `no_std` (it needs `alloc`). It covers Pauli algebra and an
//! exact small-register stabilizer simulator, timestepped Clifford circuits
//! with Pauli-frame execution, the repetition / Steane / surface code
//! families, stochastic fault models, a minimum-weight perfect matching
//! decoder, hole-pair logical qubits with braiding, failure-budget formulas,
//! and a floorplanner for tee-coupled superconducting layouts.
#![no_std]

extern crate alloc;

pub mod blossom;
pub mod budget;
pub mod circuit;
pub mod codes;
pub mod decoder;
pub mod defect;
pub mod error;
pub mod memory;
pub mod noise;
pub mod pauli;
pub mod planner;
pub mod symplectic;
pub mod tableau;

pub use error::{Error, Result};
