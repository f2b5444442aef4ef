//! Scalar abstraction: every algorithm in this crate is generic over a
//! floating-point type implementing [`Real`].

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable for all hypervolume computations.
///
/// Implemented for `f32` and `f64`. Algorithms never rely on a concrete
/// width; tolerances are injected through configuration values.
pub trait Real: Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + 'static {
    /// Shorthand for lossy conversion from an `f64` literal.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal must be representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `true` when `a` and `b` agree within `abs_tol` or within `rel_tol`
/// relative to the larger magnitude.
pub fn close<T: Real>(a: T, b: T, abs_tol: T, rel_tol: T) -> bool {
    let diff = (a - b).abs();
    diff <= abs_tol || diff <= rel_tol * a.abs().max(b.abs())
}
