//! Euler angles for SU(N): numerical toolkit.
//!
//! The crate builds the generalized Gell-Mann basis of su(N), assembles
//! group elements from a recursive Euler-angle parametrization, evaluates
//! the closed-form invariant (Haar) measure with its exact parameter
//! ranges, samples Haar-uniform elements, computes group volumes, and
//! verifies numerically that the metric induced on the base of the
//! SU(N+1) → CP^N fibration is the Fubini-Study metric.
//!
//! Modules:
//! * [`algebra`] — Gell-Mann basis construction and structure identities
//! * [`group`] — coordinate layout, group-element assembly, tangent rank
//! * [`measure`] — density, volumes, Haar sampling, the QR/Ginibre oracle
//! * [`geometry`] — currents, vielbein, base metric, Fubini-Study checks
//! * [`verify`] — named invariant suites behind the CLI
//! * [`stats`] — KS/χ² helpers for sampler quality tests

pub mod algebra;
pub mod error;
pub mod geometry;
pub mod group;
pub mod linalg;
pub mod measure;
pub mod stats;
pub mod verify;

pub use algebra::GellMannBasis;
pub use error::{Error, Result};
pub use geometry::{AlgebraValuedForm, FSPoint, MetricTensor, VielbeinFrame};
pub use group::{CoordinateLayout, EulerCoordinates, SpecialUnitary};
pub use measure::VolumeEstimate;
