//! First derivatives of the hypervolume indicator: objective-space gradient
//! and, via the chain rule, the decision-space gradient.
//!
//! For each point `i` and axis `k`, the partial derivative is the negated
//! hypervolume contribution of the point's `k`-projection against the
//! projections of the points with strictly smaller `k`-coordinate. Every
//! entry is therefore `<= 0`: growing an objective value shrinks the
//! dominated region.

use crate::error::{HvError, Result};
use crate::geometry::{check_general_position, pareto_filter, project_unchecked, PointSet};
use crate::hypervolume::hvc_unchecked;
use crate::model::ObjectiveModel;
use crate::scalar::Real;

/// Gradient in concat layout (`n*m` objective entries or `n*d` decision
/// entries). Entries of dominated points are zero; their indices are
/// reported so callers can surface a warning.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientVector<T> {
    pub values: Vec<T>,
    pub dominated: Vec<usize>,
}

impl<T: Real> GradientVector<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Entries of point `i` when each point spans `width` entries.
    pub fn block(&self, i: usize, width: usize) -> &[T] {
        &self.values[i * width..(i + 1) * width]
    }
}

/// Objective-space gradient of the hypervolume indicator.
///
/// Requires general position; strictly dominated points get zero entries
/// and are flagged in the result.
pub fn hv_gradient<T: Real>(set: &PointSet<T>) -> Result<GradientVector<T>> {
    let report = check_general_position(set.points());
    if !report.ok() {
        return Err(HvError::GeneralPosition(report));
    }

    let n = set.len();
    let m = set.dim();
    let points = set.points();
    let r = set.reference();

    let kept = pareto_filter(points);
    let mut is_kept = vec![false; n];
    for &i in &kept {
        is_kept[i] = true;
    }
    let dominated: Vec<usize> = (0..n).filter(|&i| !is_kept[i]).collect();

    let mut values = vec![T::zero(); n * m];
    for i in 0..n {
        if !is_kept[i] {
            continue;
        }
        for k in 0..m {
            let yk = points[i][k];
            let lower: Vec<Vec<T>> = points
                .iter()
                .filter(|p| p[k] < yk)
                .map(|p| project_unchecked(p, k))
                .collect();
            let y_proj = project_unchecked(points[i].as_slice(), k);
            let r_proj = project_unchecked(r, k);
            values[i * m + k] = -hvc_unchecked(&y_proj, &lower, &r_proj);
        }
    }
    Ok(GradientVector { values, dominated })
}

/// Decision-space gradient `(dH/dF)(dF/dX)` for `n` stacked decision
/// vectors of length `d`.
pub fn hv_gradient_decision<T: Real, M: ObjectiveModel<T>>(
    x: &[T],
    n: usize,
    model: &M,
    reference: &[T],
) -> Result<GradientVector<T>> {
    let d = model.decision_dim();
    let m = model.objective_dim();
    if x.len() != n * d {
        return Err(HvError::BadVectorLength { len: x.len(), dim: d });
    }
    if reference.len() != m {
        return Err(HvError::DimensionMismatch { expected: m, got: reference.len() });
    }

    let points: Vec<Vec<T>> = (0..n).map(|i| model.evaluate(&x[i * d..(i + 1) * d])).collect();
    for p in &points {
        if p.len() != m {
            return Err(HvError::ShapeMismatch {
                context: format!("model returned {} objectives, expected {m}", p.len()),
            });
        }
    }
    let set = PointSet::new(points, reference.to_vec())?;
    let obj = hv_gradient(&set)?;

    let mut values = vec![T::zero(); n * d];
    for i in 0..n {
        let jac = model.jacobian(&x[i * d..(i + 1) * d]);
        if jac.len() != m * d {
            return Err(HvError::ShapeMismatch {
                context: format!("jacobian has {} entries, expected {}", jac.len(), m * d),
            });
        }
        for a in 0..d {
            let mut s = T::zero();
            for k in 0..m {
                s = s + obj.values[i * m + k] * jac[k * d + a];
            }
            values[i * d + a] = s;
        }
    }
    Ok(GradientVector { values, dominated: obj.dominated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{IdentityModel, LinearModel};
    use crate::oracle::{fd_gradient, FdConfig};

    fn example1() -> PointSet<f64> {
        PointSet::new(
            vec![vec![5.0, 3.0, 7.0], vec![2.0, 1.0, 10.0]],
            vec![9.0, 10.0, 12.0],
        )
        .unwrap()
    }

    #[test]
    fn example1_gradient() {
        // Hand-differentiated from
        // HV = (9-a1)(10-a2)(12-a3) + (9-b1)(10-b2)(12-b3) - (9-a1)(10-a2)(12-b3).
        let g = hv_gradient(&example1()).unwrap();
        assert_eq!(g.values, vec![-21.0, -12.0, -28.0, -18.0, -14.0, -35.0]);
        assert!(g.dominated.is_empty());
    }

    #[test]
    fn single_point_gradient() {
        let s = PointSet::new(vec![vec![0.0, 0.0, 0.0]], vec![1.0, 1.0, 1.0]).unwrap();
        let g = hv_gradient(&s).unwrap();
        assert_eq!(g.values, vec![-1.0, -1.0, -1.0]);
    }

    #[test]
    fn dominated_point_entries_are_zero_and_flagged() {
        let s = PointSet::new(
            vec![vec![1.0, 2.0], vec![3.0, 4.0]],
            vec![9.0, 9.0],
        )
        .unwrap();
        let g = hv_gradient(&s).unwrap();
        assert_eq!(g.dominated, vec![1]);
        assert_eq!(g.block(1, 2), &[0.0, 0.0]);
        assert!(g.block(0, 2).iter().all(|&v| v < 0.0));
    }

    #[test]
    fn general_position_violation_is_an_error() {
        let s = PointSet::new(
            vec![vec![1.0, 2.0], vec![1.0, 1.0]],
            vec![9.0, 9.0],
        )
        .unwrap();
        assert!(matches!(hv_gradient(&s), Err(HvError::GeneralPosition(_))));
    }

    #[test]
    fn matches_finite_differences_on_example1() {
        let set = example1();
        let g = hv_gradient(&set).unwrap();
        let r = set.reference().to_vec();
        let flat = crate::geometry::concat(&set);
        let cfg = FdConfig::gradient_default();
        let fd = fd_gradient(
            |v| {
                let pts: Vec<Vec<f64>> = v.chunks(3).map(<[f64]>::to_vec).collect();
                crate::hypervolume::hv_points(&pts, &r)
            },
            &flat,
            &cfg,
        );
        for (a, f) in g.values.iter().zip(&fd) {
            assert!((a - f).abs() < 1e-6, "{a} vs {f}");
        }
    }

    #[test]
    fn identity_model_matches_objective_gradient() {
        let set = example1();
        let x = crate::geometry::concat(&set);
        let model = IdentityModel { dim: 3 };
        let g = hv_gradient_decision(&x, 2, &model, set.reference()).unwrap();
        assert_eq!(g.values, hv_gradient(&set).unwrap().values);
    }

    #[test]
    fn scaling_model_doubles_gradient() {
        // f(x) = 2x on a single point.
        let model = LinearModel::new(vec![2.0, 0.0, 0.0, 2.0], 2, 2);
        let x = vec![1.0, 2.0];
        let g = hv_gradient_decision(&x, 1, &model, &[9.0, 9.0]).unwrap();
        let y = PointSet::new(vec![vec![2.0, 4.0]], vec![9.0, 9.0]).unwrap();
        let gy = hv_gradient(&y).unwrap();
        assert_eq!(g.values[0], 2.0 * gy.values[0]);
        assert_eq!(g.values[1], 2.0 * gy.values[1]);
    }
}
