//! Volume-variation analysis of porous bodies.
//!
//! A porous body is a solid phase plus a "void" phase whose volumes sum to the
//! body volume. This crate computes the six breathing coefficients (ratios of
//! volume variations between the three phases), classifies breathing regimes,
//! and gates results against measurement uncertainty. On top of that sits a
//! closed-form model of perfect uniaxial swelling of a monosized 2D disc
//! packing, a sweep engine that locates the coefficient's local extrema along
//! swelling trajectories, and a coordinate-geometry oracle that verifies the
//! closed-form tile areas by explicit polygon construction.
//!
//! The crate is `no_std`-compatible (`alloc` is required). Without the
//! default `std` feature, enable the `libm` feature for floating-point math.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod geometry;
pub mod packing;
pub mod partition;
pub mod sweep;

pub use packing::{PackingKind, PackingScenario, PackingState};
pub use partition::{
    BreathingRegime, CoefficientDefinition, CoefficientResult, Configuration, LimitCase, Phase,
    Validity, ValidityConfig, VolumeDelta, VolumePartition,
};
pub use sweep::{ExtremaReport, Spacing, SweepConfig, SweepPoint};
