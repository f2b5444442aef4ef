//! One-stop comparison of every analytic derivative against the
//! finite-difference oracles, and of the two Hessian algorithms against
//! each other for `m = 3`.

use crate::error::{HvError, Result};
use crate::geometry::{check_general_position, concat, deconcat, PointSet};
use crate::gradient::hv_gradient;
use crate::hessian3d::hessian_3d_sweep;
use crate::hessian_nd::hessian_objective_full;
use crate::hypervolume::hv_points;
use crate::oracle::{fd_gradient, fd_hessian, FdConfig};
use crate::scalar::Real;

/// Entries of the finite-difference Hessian smaller than this count as
/// structural zeros when comparing supports.
pub const FD_SUPPORT_TOL: f64 = 1e-6;

/// Maximum entrywise deviation allowed between the 3-D sweep and the
/// general algorithm.
pub const SWEEP_AGREEMENT_TOL: f64 = 1e-12;

/// Outcome of [`verify_derivatives`]: analytic results, oracle deviations,
/// and non-zero accounting.
#[derive(Debug, Clone)]
pub struct DerivativeReport<T> {
    pub gradient: Vec<T>,
    pub hessian: crate::sparse::SparseSymMatrix<T>,
    pub grad_max_abs_dev: T,
    pub grad_max_rel_dev: T,
    pub grad_ok: bool,
    pub hess_max_abs_dev: T,
    pub hess_max_rel_dev: T,
    pub hess_ok: bool,
    pub hess_nnz: usize,
    /// Cells where exactly one of {analytic, finite differences} is above
    /// the support threshold: [`FD_SUPPORT_TOL`], floored at the rounding
    /// noise of the second-difference stencil for this data's magnitude.
    pub support_mismatches: usize,
    /// Sweep-vs-general maximum deviation, `m = 3` only.
    pub sweep_vs_general: Option<T>,
    pub sweep_support_ok: Option<bool>,
    pub dominated: Vec<usize>,
}

impl<T: Real> DerivativeReport<T> {
    pub fn passed(&self) -> bool {
        self.grad_ok
            && self.hess_ok
            && self.support_mismatches == 0
            && self.sweep_vs_general.is_none_or(|d| d <= T::of(SWEEP_AGREEMENT_TOL))
            && self.sweep_support_ok.unwrap_or(true)
    }
}

/// Smallest coordinate gap a finite-difference stencil may straddle: the
/// minimum over axes of both inter-point gaps and slack to the reference.
pub fn fd_safety_margin<T: Real>(set: &PointSet<T>) -> T {
    let m = set.dim();
    let mut margin = T::infinity();
    for k in 0..m {
        let mut coords: Vec<T> = set.points().iter().map(|p| p[k]).collect();
        coords.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        for w in coords.windows(2) {
            margin = margin.min(w[1] - w[0]);
        }
        if let Some(&hi) = coords.last() {
            margin = margin.min(set.reference()[k] - hi);
        }
    }
    margin
}

/// Runs gradient and Hessian checks against central differences, plus the
/// sweep/general cross-check when `m = 3`.
///
/// Rejects inputs whose general-position margin is too small for the
/// stencil to stay inside one differentiability cell.
pub fn verify_derivatives<T: Real>(
    set: &PointSet<T>,
    grad_cfg: &FdConfig<T>,
    hess_cfg: &FdConfig<T>,
) -> Result<DerivativeReport<T>> {
    let report = check_general_position(set.points());
    if !report.ok() {
        return Err(HvError::GeneralPosition(report));
    }
    let margin = fd_safety_margin(set);
    let widest = grad_cfg.step.max(hess_cfg.step);
    if !set.is_empty() && margin <= T::of(4.0) * widest {
        return Err(HvError::UnsafeFdStep {
            step: widest.to_f64().unwrap_or(f64::NAN),
            reason: format!(
                "coordinate margin {margin} admits tie-crossing perturbations"
            ),
        });
    }

    let m = set.dim();
    let flat = concat(set);
    let reference = set.reference().to_vec();
    let hv_flat = |v: &[T]| hv_points(&deconcat(v, m).expect("layout"), &reference);

    let analytic_grad = hv_gradient(set)?;
    let fd_grad = fd_gradient(hv_flat, &flat, grad_cfg);
    let (mut g_abs, mut g_rel) = (T::zero(), T::zero());
    for (&a, &f) in analytic_grad.values.iter().zip(&fd_grad) {
        let dev = (a - f).abs();
        g_abs = g_abs.max(dev);
        let scale = a.abs().max(f.abs());
        if scale > T::zero() {
            g_rel = g_rel.max(dev / scale);
        }
    }
    let grad_ok = analytic_grad
        .values
        .iter()
        .zip(&fd_grad)
        .all(|(&a, &f)| grad_cfg.within(a, f));

    let analytic = hessian_objective_full(set)?;
    let fd = fd_hessian(hv_flat, &flat, hess_cfg);
    let dim = set.len() * m;
    // The cross stencil's rounding noise scales with eps * |hv| / h^2; the
    // support threshold must sit above it or noise cells register as
    // spurious fd support.
    let noise_floor =
        T::of(4.0 * f64::EPSILON) * hv_flat(&flat) / (hess_cfg.step * hess_cfg.step);
    let support_tol = T::of(FD_SUPPORT_TOL).max(noise_floor);
    let (mut h_abs, mut h_rel) = (T::zero(), T::zero());
    let mut hess_ok = true;
    let mut support_mismatches = 0usize;
    for a in 0..dim {
        for b in 0..dim {
            let ana = analytic.matrix.get(a, b);
            let ora = fd[a][b];
            let dev = (ana - ora).abs();
            h_abs = h_abs.max(dev);
            let scale = ana.abs().max(ora.abs());
            if scale > T::zero() {
                h_rel = h_rel.max(dev / scale);
            }
            hess_ok &= hess_cfg.within(ana, ora);
            if (ana.abs() > support_tol) != (ora.abs() > support_tol) {
                support_mismatches += 1;
            }
        }
    }

    let (sweep_vs_general, sweep_support_ok) = if m == 3 {
        let sweep = hessian_3d_sweep(set)?;
        let dev = sweep.max_abs_diff(&analytic.matrix);
        let support = sweep.support_equal(&analytic.matrix, T::of(SWEEP_AGREEMENT_TOL));
        (Some(dev), Some(support))
    } else {
        (None, None)
    };
    let hess_nnz = analytic.matrix.nnz();

    Ok(DerivativeReport {
        gradient: analytic_grad.values,
        hessian: analytic.matrix,
        grad_max_abs_dev: g_abs,
        grad_max_rel_dev: g_rel,
        grad_ok,
        hess_max_abs_dev: h_abs,
        hess_max_rel_dev: h_rel,
        hess_ok,
        hess_nnz,
        support_mismatches,
        sweep_vs_general,
        sweep_support_ok,
        dominated: analytic.dominated,
    })
}
