//! Exact hypervolume indicator values, gradients, and sparse Hessian
//! matrices for vectorized point sets in m-dimensional objective space,
//! with chain-rule transport to decision space.
//!
//! A set of `n` points is flattened into a single vector of length `n*m`
//! (see [`geometry::concat`]), turning the set-valued indicator into an
//! ordinary function whose derivatives this crate computes analytically:
//!
//! * [`hypervolume::hv`] — exact hypervolume for any `m`, with dedicated
//!   sweeps for `m <= 3`;
//! * [`gradient::hv_gradient`] — every partial derivative as a negated
//!   projected contribution;
//! * [`hessian3d::hessian_3d_sweep`] — all `O(n)` non-zero second
//!   derivatives for `m = 3` in `O(n log n)` time;
//! * [`hessian_nd::hessian_objective`] — the general recursive algorithm,
//!   and [`hessian_nd::hessian_decision`] for decision space;
//! * [`oracle`] — independent finite-difference, inclusion-exclusion, and
//!   Monte Carlo ground truth used by the test suites;
//! * [`problems`] — a quadratic test problem and a hypervolume Newton step.
//!
//! Everything is generic over the scalar type through [`scalar::Real`]
//! (`f32` or `f64`); the `*64` aliases below pin the common choice.
//!
//! ```
//! use hvhess::{hessian_3d_sweep, hv, hv_gradient, PointSet64};
//!
//! let set = PointSet64::new(
//!     vec![vec![5.0, 3.0, 7.0], vec![2.0, 1.0, 10.0]],
//!     vec![9.0, 10.0, 12.0],
//! )?;
//! assert_eq!(hv(&set).value, 210.0);
//!
//! let grad = hv_gradient(&set)?;
//! assert!(grad.values.iter().all(|&g| g <= 0.0));
//!
//! let hess = hessian_3d_sweep(&set)?;
//! assert_eq!(hess.get(0, 2), 7.0); // d2/dy1 dy3 of the first point
//! assert_eq!(hess.get(0, 0), 0.0); // repeated-axis entries vanish
//! # Ok::<(), hvhess::HvError>(())
//! ```

pub mod error;
pub mod geometry;
pub mod gradient;
pub mod hessian3d;
pub mod hessian_nd;
pub mod hypervolume;
pub mod model;
pub mod oracle;
pub mod problems;
pub mod scalar;
pub mod sparse;
pub mod synthetic;
pub mod verify;

pub use error::{HvError, Result};
pub use geometry::{
    check_general_position, clip, concat, deconcat, dominates, pareto_filter, project,
    GeneralPositionReport, Point, PointSet,
};
pub use gradient::{hv_gradient, hv_gradient_decision, GradientVector};
pub use hessian3d::{
    hessian_3d_sweep, hessian_3d_sweep_with_stats, FrontNeighbor, InsertOutcome, SweepFront,
    SweepStats,
};
pub use hessian_nd::{
    hessian_decision, hessian_decision_parts, hessian_objective, hessian_objective_full,
    hvc_derivative, HvcDerivative, ObjectiveHessian,
};
pub use hypervolume::{hv, hv_points, hvc, HvResult};
pub use model::{IdentityModel, LinearModel, ObjectiveModel};
pub use oracle::{
    fd_gradient, fd_hessian, hv_inclusion_exclusion, hv_monte_carlo, FdConfig,
    MonteCarloEstimate,
};
pub use problems::{make_quadratic_mop, newton_step, NewtonStep, QuadraticMop};
pub use scalar::Real;
pub use sparse::SparseSymMatrix;
pub use verify::{verify_derivatives, DerivativeReport};

/// `f64` instantiations of the core types.
pub type Point64 = Point<f64>;
pub type PointSet64 = PointSet<f64>;
pub type SparseSymMatrix64 = SparseSymMatrix<f64>;
pub type GradientVector64 = GradientVector<f64>;
pub type FdConfig64 = FdConfig<f64>;

/// `f32` instantiations of the core types.
pub type Point32 = Point<f32>;
pub type PointSet32 = PointSet<f32>;
pub type SparseSymMatrix32 = SparseSymMatrix<f32>;
