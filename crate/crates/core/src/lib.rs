//! Physical-resource accounting for quantum computing architectures.
//!
//! The crate counts Hilbert-space dimensions for systems of independent
//! degrees of freedom and for bose, fermi and "distinguishable" many-body
//! systems, solves the inverse problem (minimal modes or particles for a
//! target number of equivalent qubits), classifies growth policies into
//! scalability regimes, and reproduces a handful of worked physical case
//! studies.
//!
//! Exact counts are arbitrary-precision integers. Real-valued quantities are
//! generic over [`Scalar`] (`f32` or `f64`); the aliases below fix the scalar
//! to [`Real`] for callers that don't care.

pub mod cases;
pub mod classify;
pub mod dimension;
mod error;
pub mod growth;
pub mod oracle;
pub mod report;
mod scalar;
pub mod solver;
pub mod special;
pub mod spec;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use dimension::{ExactCount, SystemSpec};
pub use growth::GrowthClass;

/// Scalar used by reports, the CLI and the aliases below.
pub type Real = f64;

pub type PhysicalConstants = cases::PhysicalConstants<Real>;
pub type HydrogenState = cases::HydrogenState<Real>;
pub type HydrogenRadius = cases::HydrogenRadius<Real>;
pub type NmrPseudopure = cases::NmrPseudopure<Real>;
pub type DecoherenceComparison = cases::DecoherenceComparison<Real>;
