//! Curve shortening flow with an ambient force field.
//!
//! The crate evolves closed convex planar curves under the normal speed
//! `F = σ1·k + σ2 + ⟨V, ν⟩`, computes the explicit curvature and length
//! thresholds that govern convexity and extinction, and provides monitors that
//! check the evolution identities and asymptotic estimates on recorded runs.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cli;
pub mod constants;
pub mod diagnostics;
pub mod error;
pub mod field;
pub mod flow;
pub mod geometry;

pub use error::{Error, Result};


pub use field::AmbientField;
pub use flow::{FlowParams, StepControl, Trajectory};
pub use geometry::{ClosedCurve, CurveGeometry, Point2, Vec2};
