//! Built-in twice-differentiable test problems and an unconstrained
//! hypervolume Newton step demo exercising the decision-space derivatives.

use nalgebra::{DMatrix, DVector, RealField};
use num_traits::Float;

use crate::error::{HvError, Result};
use crate::gradient::hv_gradient_decision;
use crate::hessian_nd::hessian_decision;
use crate::hypervolume::hv_points;
use crate::model::ObjectiveModel;
use crate::scalar::Real;

/// Condition-number threshold beyond which the Newton system counts as
/// singular and the step falls back to gradient ascent.
pub const SINGULAR_CONDITION: f64 = 1e12;

/// Maximum number of step halvings in the backtracking line search.
pub const MAX_HALVINGS: u32 = 20;

/// The sphere-sum problem `f_j(x) = ||x - c_j||^2` with one center per
/// objective. Jacobian rows are `2(x - c_j)'`, Hessian blocks `2I`.
#[derive(Debug, Clone)]
pub struct QuadraticMop<T> {
    centers: Vec<Vec<T>>,
    d: usize,
}

/// Builds the quadratic test problem from `m` distinct centers in `R^d`.
pub fn make_quadratic_mop<T: Real>(d: usize, m: usize, centers: Vec<Vec<T>>) -> Result<QuadraticMop<T>> {
    if centers.len() != m {
        return Err(HvError::ShapeMismatch {
            context: format!("{} centers for {m} objectives", centers.len()),
        });
    }
    for c in &centers {
        if c.len() != d {
            return Err(HvError::DimensionMismatch { expected: d, got: c.len() });
        }
    }
    for i in 0..centers.len() {
        for j in (i + 1)..centers.len() {
            if centers[i] == centers[j] {
                return Err(HvError::ShapeMismatch {
                    context: format!("centers {i} and {j} coincide"),
                });
            }
        }
    }
    Ok(QuadraticMop { centers, d })
}

impl<T: Real> ObjectiveModel<T> for QuadraticMop<T> {
    fn objective_dim(&self) -> usize {
        self.centers.len()
    }

    fn decision_dim(&self) -> usize {
        self.d
    }

    fn evaluate(&self, x: &[T]) -> Vec<T> {
        self.centers
            .iter()
            .map(|c| x.iter().zip(c).map(|(&a, &b)| (a - b) * (a - b)).sum())
            .collect()
    }

    fn jacobian(&self, x: &[T]) -> Vec<T> {
        let two = T::of(2.0);
        let mut jac = Vec::with_capacity(self.centers.len() * self.d);
        for c in &self.centers {
            for a in 0..self.d {
                jac.push(two * (x[a] - c[a]));
            }
        }
        jac
    }

    fn hessian_blocks(&self, _x: &[T]) -> Vec<Vec<T>> {
        let two = T::of(2.0);
        let mut block = vec![T::zero(); self.d * self.d];
        for a in 0..self.d {
            block[a * self.d + a] = two;
        }
        vec![block; self.centers.len()]
    }
}

/// Outcome of one hypervolume Newton iteration.
#[derive(Debug, Clone)]
pub struct NewtonStep<T> {
    pub x_next: Vec<T>,
    pub hv_before: T,
    pub hv_after: T,
    /// Set when the Newton system was unusable (ill-conditioned Hessian or
    /// a degenerate configuration) and the step fell back to gradient
    /// ascent or to standing still.
    pub fallback: bool,
    /// Accepted step scale; 0 when no candidate improved the hypervolume.
    pub step_scale: T,
}

/// One damped Newton step maximizing the hypervolume of `n` stacked
/// decision vectors: `X <- X - s H^{-1} grad`, with `s` halved until the
/// hypervolume does not decrease (at most [`MAX_HALVINGS`] times).
///
/// An ill-conditioned Hessian (condition estimate above
/// [`SINGULAR_CONDITION`]) triggers a flagged gradient-ascent fallback; a
/// configuration without two-sided derivatives (tied coordinates) triggers
/// a flagged zero step.
pub fn newton_step<T, M>(x: &[T], n: usize, model: &M, reference: &[T]) -> Result<NewtonStep<T>>
where
    T: Real + RealField,
    M: ObjectiveModel<T>,
{
    let d = model.decision_dim();
    if x.len() != n * d {
        return Err(HvError::BadVectorLength { len: x.len(), dim: d });
    }
    let eval_hv = |x: &[T]| -> Option<T> {
        let points: Vec<Vec<T>> = (0..n).map(|i| model.evaluate(&x[i * d..(i + 1) * d])).collect();
        let ok = points
            .iter()
            .all(|p| p.iter().zip(reference).all(|(c, r)| Float::is_finite(*c) && c < r));
        ok.then(|| hv_points(&points, reference))
    };

    let hv_before = eval_hv(x).ok_or_else(|| HvError::ShapeMismatch {
        context: "starting configuration does not dominate the reference".into(),
    })?;

    let derivatives = (|| -> Result<(Vec<T>, Vec<T>)> {
        let grad = hv_gradient_decision(x, n, model, reference)?;
        let hess = hessian_decision(x, n, model, reference)?;
        Ok((grad.values, hess.to_dense()))
    })();

    let (grad, hess) = match derivatives {
        Ok(parts) => parts,
        Err(HvError::GeneralPosition(_)) => {
            // No two-sided derivative exists; stand still, flagged.
            return Ok(NewtonStep {
                x_next: x.to_vec(),
                hv_before,
                hv_after: hv_before,
                fallback: true,
                step_scale: T::zero(),
            });
        }
        Err(e) => return Err(e),
    };

    let nd = n * d;
    let h = DMatrix::from_row_slice(nd, nd, &hess);
    let g = DVector::from_column_slice(&grad);
    let eigen = h.symmetric_eigen();
    let mut max_abs = T::zero();
    let mut min_abs = T::infinity();
    for ev in eigen.eigenvalues.iter() {
        max_abs = Float::max(max_abs, Float::abs(*ev));
        min_abs = Float::min(min_abs, Float::abs(*ev));
    }
    let singular = min_abs == T::zero() || max_abs / min_abs > T::of(SINGULAR_CONDITION);

    let direction: DVector<T> = if singular {
        g.clone() // ascent on the hypervolume
    } else {
        let mut coeffs = eigen.eigenvectors.transpose() * &g;
        for (c, ev) in coeffs.iter_mut().zip(eigen.eigenvalues.iter()) {
            *c = -*c / *ev;
        }
        &eigen.eigenvectors * coeffs
    };

    let mut scale = T::one();
    for _ in 0..=MAX_HALVINGS {
        let candidate: Vec<T> =
            x.iter().zip(direction.iter()).map(|(&xi, &di)| xi + scale * di).collect();
        if let Some(hv_after) = eval_hv(&candidate) {
            if hv_after >= hv_before {
                return Ok(NewtonStep {
                    x_next: candidate,
                    hv_before,
                    hv_after,
                    fallback: singular,
                    step_scale: scale,
                });
            }
        }
        scale /= T::of(2.0);
    }

    Ok(NewtonStep {
        x_next: x.to_vec(),
        hv_before,
        hv_after: hv_before,
        fallback: singular,
        step_scale: T::zero(),
    })
}
