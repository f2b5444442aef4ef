//! Error type shared by every module of the crate.

use thiserror::Error;

use crate::geometry::GeneralPositionReport;

pub type Result<T, E = HvError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum HvError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("coordinate {axis} of point {point} is not finite")]
    NonFinite { point: usize, axis: usize },

    #[error("point {point} does not strictly dominate the reference on axis {axis}")]
    ReferenceNotDominated { point: usize, axis: usize },

    #[error("points are not in general position: {0}")]
    GeneralPosition(GeneralPositionReport),

    #[error("vector length {len} is not divisible by dimension {dim}")]
    BadVectorLength { len: usize, dim: usize },

    #[error("{n} points exceed the inclusion-exclusion limit of {max}")]
    TooManyPoints { n: usize, max: usize },

    #[error("Monte Carlo sampling box has zero volume")]
    DegenerateSamplingBox,

    #[error("sweeps disagree on Hessian entry ({row},{col}): {a} vs {b}")]
    SweepMergeConflict { row: usize, col: usize, a: f64, b: f64 },

    #[error("shape mismatch: {context}")]
    ShapeMismatch { context: String },

    #[error("finite-difference step {step} is unsafe: {reason}")]
    UnsafeFdStep { step: f64, reason: String },
}
