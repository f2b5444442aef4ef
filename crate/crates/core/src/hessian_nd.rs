//! General m-dimensional objective-space Hessian by recursive projection
//! and clipping, plus the decision-space assembly through the chain rule.
//!
//! Column `(i, k)` of `A = d^2 H / dF dF'` comes from differentiating the
//! gradient entry `-HVC(proj_k(y_i), proj_k of smaller-k points)` once
//! more:
//!
//! * same-point entries are `+HVC` of a twice-projected configuration
//!   (non-negative),
//! * cross-point entries are `-HVC` after clipping the smaller-k front up
//!   to `proj_k(y_i)` (non-positive); coordinates pinned by the clip give
//!   exact zeros,
//! * same-axis entries `((i,k),(j,k))` and diagonal entries are exactly
//!   zero and never stored.

use crate::error::{HvError, Result};
use crate::geometry::{
    check_general_position, clip_unchecked, pareto_filter, project_unchecked, PointSet,
};
use crate::gradient::hv_gradient;
use crate::hypervolume::hvc_unchecked;
use crate::model::ObjectiveModel;
use crate::scalar::Real;
use crate::sparse::SparseSymMatrix;

/// Derivative of a hypervolume contribution with respect to the coordinates
/// of its own point.
#[derive(Debug, Clone, PartialEq)]
pub struct HvcDerivative<T> {
    pub values: Vec<T>,
}

/// Gradient of `HVC(y, others)` with respect to `y`, computed one axis at a
/// time: component `p` is `-HVC` of the `p`-projections of `y` and of the
/// members with smaller `p`-coordinate, one dimension down. The recursion
/// bottoms out on the counting measure in dimension zero, where a lone
/// point has contribution 1 and derivative magnitude 1.
pub fn hvc_derivative<T: Real>(
    y: &[T],
    others: &[Vec<T>],
    reference: &[T],
) -> Result<HvcDerivative<T>> {
    let q = y.len();
    if q == 0 {
        return Err(HvError::DimensionMismatch { expected: 1, got: 0 });
    }
    if reference.len() != q {
        return Err(HvError::DimensionMismatch { expected: q, got: reference.len() });
    }
    for o in others {
        if o.len() != q {
            return Err(HvError::DimensionMismatch { expected: q, got: o.len() });
        }
    }
    let mut values = Vec::with_capacity(q);
    for p in 0..q {
        let lower: Vec<Vec<T>> = others
            .iter()
            .filter(|o| o[p] < y[p])
            .map(|o| project_unchecked(o, p))
            .collect();
        let y_proj = project_unchecked(y, p);
        let r_proj = project_unchecked(reference, p);
        values.push(-hvc_unchecked(&y_proj, &lower, &r_proj));
    }
    Ok(HvcDerivative { values })
}

/// Objective-space Hessian together with the asymmetry the two independent
/// triangle computations left before averaging.
#[derive(Debug, Clone)]
pub struct ObjectiveHessian<T> {
    pub matrix: SparseSymMatrix<T>,
    pub symmetry_defect: T,
    pub dominated: Vec<usize>,
}

/// Symmetrized objective-space Hessian `d^2 H / dF dF'`.
pub fn hessian_objective<T: Real>(set: &PointSet<T>) -> Result<SparseSymMatrix<T>> {
    hessian_objective_full(set).map(|h| h.matrix)
}

/// As [`hessian_objective`], also exposing the pre-symmetrization defect.
///
/// Every cell is computed twice, once from each of the two columns it
/// belongs to; mixed partials commute wherever the indicator is twice
/// differentiable, so the defect is floating-point noise.
pub fn hessian_objective_full<T: Real>(set: &PointSet<T>) -> Result<ObjectiveHessian<T>> {
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

    // Raw cells, both triangles filled independently.
    let mut raw: std::collections::BTreeMap<(usize, usize), T> = std::collections::BTreeMap::new();

    for &i in &kept {
        for k in 0..m {
            let yk = points[i][k];
            let y_proj = project_unchecked(points[i].as_slice(), k);
            let r_proj = project_unchecked(r, k);

            // Projections of points below y_i on axis k, with their indices.
            let lower: Vec<(usize, Vec<T>)> = points
                .iter()
                .enumerate()
                .filter(|(_, p)| p[k] < yk)
                .map(|(j, p)| (j, project_unchecked(p.as_slice(), k)))
                .collect();
            let lower_projs: Vec<Vec<T>> = lower.iter().map(|(_, p)| p.clone()).collect();
            let front_pos = pareto_filter(&lower_projs);

            // Same-point block: d(dH/dy_k^i)/dy_l^i = -(dHVC/dy_l).
            let front: Vec<Vec<T>> = front_pos.iter().map(|&t| lower_projs[t].clone()).collect();
            let v = hvc_derivative(&y_proj, &front, &r_proj)?;
            let col = i * m + k;
            for l in 0..m {
                if l == k {
                    continue;
                }
                let p = if l < k { l } else { l - 1 };
                let entry = -v.values[p];
                if entry != T::zero() {
                    raw.insert((i * m + l, col), entry);
                }
            }

            // Cross-point blocks: clip the front up to y_i, differentiate
            // the clipped staircase.
            let clipped: Vec<Vec<T>> =
                front.iter().map(|q| clip_unchecked(q, &y_proj)).collect();
            for (t, &pos) in front_pos.iter().enumerate() {
                let j = lower[pos].0;
                let rest: Vec<Vec<T>> = clipped
                    .iter()
                    .enumerate()
                    .filter(|(u, _)| *u != t)
                    .map(|(_, q)| q.clone())
                    .collect();
                let w = hvc_derivative(&clipped[t], &rest, &r_proj)?;
                for l in 0..m {
                    if l == k {
                        continue;
                    }
                    let p = if l < k { l } else { l - 1 };
                    // A coordinate below y_i's is pinned by the clip: the
                    // entry is exactly zero.
                    if front[t][p] < y_proj[p] {
                        continue;
                    }
                    let entry = w.values[p];
                    if entry != T::zero() {
                        raw.insert((j * m + l, col), entry);
                    }
                }
            }
        }
    }

    let mut defect = T::zero();
    let mut matrix = SparseSymMatrix::new(n * m);
    for (&(rr, cc), &v) in &raw {
        if rr > cc {
            continue;
        }
        match raw.get(&(cc, rr)) {
            Some(&t) if rr != cc => {
                defect = defect.max((v - t).abs());
                matrix.set(rr, cc, (v + t) / T::of(2.0));
            }
            _ => matrix.set(rr, cc, v),
        }
    }
    for (&(rr, cc), &v) in &raw {
        if rr > cc && !raw.contains_key(&(cc, rr)) {
            defect = defect.max(v.abs()); // transposed cell came out zero
            matrix.set(cc, rr, v / T::of(2.0));
        }
    }

    Ok(ObjectiveHessian { matrix, symmetry_defect: defect, dominated })
}

/// The chain-rule pieces of the decision-space Hessian, dense row-major of
/// side `n*d`, kept separate so the block-diagonal structure of the tensor
/// term can be inspected.
#[derive(Debug, Clone)]
pub struct DecisionHessianParts<T> {
    pub dim: usize,
    /// `(dF/dX)' A (dF/dX)`.
    pub chain_term: Vec<T>,
    /// `sum_ab (dH/df_b(x_a)) T^{ab}`: block-diagonal, n blocks of d x d.
    pub tensor_term: Vec<T>,
    /// Symmetrized sum of the two terms.
    pub full: Vec<T>,
}

/// Decision-space Hessian of the hypervolume indicator for `n` stacked
/// decision vectors, symmetrized as `(H + H')/2`.
pub fn hessian_decision<T: Real, M: ObjectiveModel<T>>(
    x: &[T],
    n: usize,
    model: &M,
    reference: &[T],
) -> Result<SparseSymMatrix<T>> {
    let parts = hessian_decision_parts(x, n, model, reference)?;
    let nd = parts.dim;
    let mut matrix = SparseSymMatrix::new(nd);
    for a in 0..nd {
        for b in a..nd {
            matrix.set(a, b, parts.full[a * nd + b]);
        }
    }
    Ok(matrix)
}

/// As [`hessian_decision`], returning the dense chain and tensor terms.
pub fn hessian_decision_parts<T: Real, M: ObjectiveModel<T>>(
    x: &[T],
    n: usize,
    model: &M,
    reference: &[T],
) -> Result<DecisionHessianParts<T>> {
    let d = model.decision_dim();
    let m = model.objective_dim();
    if x.len() != n * d {
        return Err(HvError::BadVectorLength { len: x.len(), dim: d });
    }
    if reference.len() != m {
        return Err(HvError::DimensionMismatch { expected: m, got: reference.len() });
    }

    let blocks: Vec<&[T]> = (0..n).map(|i| &x[i * d..(i + 1) * d]).collect();
    let points: Vec<Vec<T>> = blocks.iter().map(|b| model.evaluate(b)).collect();
    let set = PointSet::new(points, reference.to_vec())?;

    let a_matrix = hessian_objective(&set)?;
    let grad = hv_gradient(&set)?;

    let jacobians: Vec<Vec<T>> = blocks.iter().map(|b| model.jacobian(b)).collect();
    for jac in &jacobians {
        if jac.len() != m * d {
            return Err(HvError::ShapeMismatch {
                context: format!("jacobian has {} entries, expected {}", jac.len(), m * d),
            });
        }
    }

    let nd = n * d;
    let mut chain = vec![T::zero(); nd * nd];
    for (row, col, v) in a_matrix.entries_full() {
        let (i, k) = (row / m, row % m);
        let (j, l) = (col / m, col % m);
        for a in 0..d {
            let left = jacobians[i][k * d + a] * v;
            if left == T::zero() {
                continue;
            }
            for b in 0..d {
                chain[(i * d + a) * nd + (j * d + b)] =
                    chain[(i * d + a) * nd + (j * d + b)] + left * jacobians[j][l * d + b];
            }
        }
    }

    let mut tensor = vec![T::zero(); nd * nd];
    for (i, block) in blocks.iter().enumerate() {
        let hess = model.hessian_blocks(block);
        if hess.len() != m || hess.iter().any(|h| h.len() != d * d) {
            return Err(HvError::ShapeMismatch {
                context: format!("expected {m} Hessian blocks of {}x{}", d, d),
            });
        }
        for (beta, hb) in hess.iter().enumerate() {
            let coeff = grad.values[i * m + beta];
            if coeff == T::zero() {
                continue;
            }
            for a in 0..d {
                for b in 0..d {
                    tensor[(i * d + a) * nd + (i * d + b)] =
                        tensor[(i * d + a) * nd + (i * d + b)] + coeff * hb[a * d + b];
                }
            }
        }
    }

    let mut full = vec![T::zero(); nd * nd];
    let half = T::of(0.5);
    for a in 0..nd {
        for b in 0..nd {
            let ab = chain[a * nd + b] + tensor[a * nd + b];
            let ba = chain[b * nd + a] + tensor[b * nd + a];
            full[a * nd + b] = (ab + ba) * half;
        }
    }

    Ok(DecisionHessianParts { dim: nd, chain_term: chain, tensor_term: tensor, full })
}
