//! Command-line surface and serialization for the breathing-coefficient
//! toolkit: classification reports, single-point evaluations, sweeps with
//! extrema detection, geometry verification, and the limit-value table.

pub mod cli;
pub mod commands;
pub mod error;
pub mod format;
pub mod manifest;
