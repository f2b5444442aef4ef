//! Independent ground truth: inclusion-exclusion and Monte Carlo hypervolume,
//! plus central finite differences for gradients and Hessians.
//!
//! Nothing in this module shares code with the analytic computations it
//! checks; agreement between the two routes is what the test suites assert.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{HvError, Result};
use crate::geometry::PointSet;
use crate::scalar::Real;

/// Hard cap for the 2^n subset enumeration.
pub const INCLUSION_EXCLUSION_MAX_POINTS: usize = 20;

/// Exact hypervolume by subset inclusion-exclusion.
///
/// Every non-empty subset contributes `(-1)^(|S|+1)` times the volume of the
/// intersection box `[max coords, r]`; negative extents clamp the term to
/// zero. Exact for integer-valued inputs, `O(2^n)` otherwise unusable.
pub fn hv_inclusion_exclusion<T: Real>(set: &PointSet<T>) -> Result<T> {
    hv_inclusion_exclusion_points(set.points(), set.reference())
}

/// Slice-level variant usable on projected data.
pub fn hv_inclusion_exclusion_points<T: Real>(points: &[Vec<T>], reference: &[T]) -> Result<T> {
    let n = points.len();
    if n > INCLUSION_EXCLUSION_MAX_POINTS {
        return Err(HvError::TooManyPoints { n, max: INCLUSION_EXCLUSION_MAX_POINTS });
    }
    let m = reference.len();
    let mut total = T::zero();
    for mask in 1u32..(1u32 << n) {
        let mut vol = T::one();
        for k in 0..m {
            let mut worst = T::neg_infinity();
            for (i, p) in points.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    worst = worst.max(p[k]);
                }
            }
            let extent = reference[k] - worst;
            if extent <= T::zero() {
                vol = T::zero();
                break;
            }
            vol = vol * extent;
        }
        if mask.count_ones() % 2 == 1 {
            total = total + vol;
        } else {
            total = total - vol;
        }
    }
    Ok(total)
}

/// Step size and acceptance tolerances for finite-difference checks.
#[derive(Debug, Clone, Copy)]
pub struct FdConfig<T> {
    pub step: T,
    pub abs_tol: T,
    pub rel_tol: T,
}

impl<T: Real> FdConfig<T> {
    pub fn new(step: T, abs_tol: T, rel_tol: T) -> Result<Self> {
        if !(step > T::zero() && abs_tol > T::zero() && rel_tol > T::zero()) {
            return Err(HvError::UnsafeFdStep {
                step: step.to_f64().unwrap_or(f64::NAN),
                reason: "step and tolerances must be positive".into(),
            });
        }
        Ok(Self { step, abs_tol, rel_tol })
    }

    /// h = 1e-5, tolerances max(1e-8 abs, 1e-6 rel).
    pub fn gradient_default() -> Self {
        Self { step: T::of(1e-5), abs_tol: T::of(1e-8), rel_tol: T::of(1e-6) }
    }

    /// h = 1e-4, tolerances max(1e-6 abs, 1e-4 rel); second differences lose
    /// about half the digits of first differences.
    pub fn hessian_default() -> Self {
        Self { step: T::of(1e-4), abs_tol: T::of(1e-6), rel_tol: T::of(1e-4) }
    }

    /// Deviation check against `max(abs_tol, rel_tol * magnitude)`.
    pub fn within(&self, a: T, b: T) -> bool {
        crate::scalar::close(a, b, self.abs_tol, self.rel_tol)
    }
}

/// Central first differences of `f` at `at`, one entry per coordinate.
pub fn fd_gradient<T: Real>(f: impl Fn(&[T]) -> T, at: &[T], cfg: &FdConfig<T>) -> Vec<T> {
    let h = cfg.step;
    let two_h = h + h;
    let mut x = at.to_vec();
    let mut grad = Vec::with_capacity(at.len());
    for i in 0..at.len() {
        let orig = x[i];
        x[i] = orig + h;
        let hi = f(&x);
        x[i] = orig - h;
        let lo = f(&x);
        x[i] = orig;
        grad.push((hi - lo) / two_h);
    }
    grad
}

/// Central second differences of `f` at `at`, returned as a dense symmetric
/// matrix in row-major rows.
///
/// Off-diagonal entries use the 4-point cross stencil, diagonal entries the
/// 3-point stencil.
pub fn fd_hessian<T: Real>(f: impl Fn(&[T]) -> T, at: &[T], cfg: &FdConfig<T>) -> Vec<Vec<T>> {
    let dim = at.len();
    let h = cfg.step;
    let h2 = h * h;
    let four_h2 = T::of(4.0) * h2;
    let f0 = f(at);
    let mut x = at.to_vec();
    let mut hess = vec![vec![T::zero(); dim]; dim];
    for a in 0..dim {
        let oa = x[a];
        x[a] = oa + h;
        let plus = f(&x);
        x[a] = oa - h;
        let minus = f(&x);
        x[a] = oa;
        hess[a][a] = (plus - (f0 + f0) + minus) / h2;
        for b in (a + 1)..dim {
            let ob = x[b];
            x[a] = oa + h;
            x[b] = ob + h;
            let pp = f(&x);
            x[b] = ob - h;
            let pm = f(&x);
            x[a] = oa - h;
            let mm = f(&x);
            x[b] = ob + h;
            let mp = f(&x);
            x[a] = oa;
            x[b] = ob;
            let v = (pp - pm - mp + mm) / four_h2;
            hess[a][b] = v;
            hess[b][a] = v;
        }
    }
    hess
}

/// A Monte Carlo hypervolume estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate<T> {
    pub value: T,
    pub std_error: T,
}

/// Uniform rejection sampling inside the bounding box spanned by the
/// componentwise minimum of the points and the reference point.
///
/// Deterministic for a fixed seed.
pub fn hv_monte_carlo<T: Real>(
    set: &PointSet<T>,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloEstimate<T>> {
    if set.is_empty() || samples == 0 {
        return Ok(MonteCarloEstimate { value: T::zero(), std_error: T::zero() });
    }
    let m = set.dim();
    let r = set.reference();
    let mut lo = vec![T::infinity(); m];
    for p in set.points() {
        for k in 0..m {
            lo[k] = lo[k].min(p[k]);
        }
    }
    let mut box_vol = T::one();
    for k in 0..m {
        let extent = r[k] - lo[k];
        if extent <= T::zero() {
            return Err(HvError::DegenerateSamplingBox);
        }
        box_vol = box_vol * extent;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = vec![T::zero(); m];
    let mut hits: u64 = 0;
    for _ in 0..samples {
        for k in 0..m {
            let u = T::of(rng.random::<f64>());
            sample[k] = lo[k] + u * (r[k] - lo[k]);
        }
        let dominated = set
            .points()
            .iter()
            .any(|p| crate::geometry::weakly_dominates(p, &sample));
        if dominated {
            hits += 1;
        }
    }

    let frac = T::of(hits as f64 / samples as f64);
    let var = frac * (T::one() - frac) / T::of(samples as f64);
    Ok(MonteCarloEstimate { value: box_vol * frac, std_error: box_vol * var.sqrt() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1() -> PointSet<f64> {
        PointSet::new(
            vec![vec![5.0, 3.0, 7.0], vec![2.0, 1.0, 10.0]],
            vec![9.0, 10.0, 12.0],
        )
        .unwrap()
    }

    fn example2() -> PointSet<f64> {
        PointSet::new(
            vec![vec![8.0, 7.0, 10.0], vec![4.0, 11.0, 17.0], vec![2.0, 9.0, 21.0]],
            vec![10.0, 13.0, 23.0],
        )
        .unwrap()
    }

    #[test]
    fn inclusion_exclusion_examples() {
        assert_eq!(hv_inclusion_exclusion(&example1()).unwrap(), 210.0);
        assert_eq!(hv_inclusion_exclusion(&example2()).unwrap(), 236.0);
        let empty = PointSet::<f64>::new(vec![], vec![1.0, 1.0]).unwrap();
        assert_eq!(hv_inclusion_exclusion(&empty).unwrap(), 0.0);
    }

    #[test]
    fn inclusion_exclusion_rejects_large_sets() {
        let points: Vec<Vec<f64>> = (0..21).map(|i| vec![i as f64 * 0.01]).collect();
        let set = PointSet::new(points, vec![1.0]).unwrap();
        assert!(matches!(
            hv_inclusion_exclusion(&set),
            Err(HvError::TooManyPoints { n: 21, .. })
        ));
    }

    #[test]
    fn fd_gradient_linear_and_constant() {
        let cfg = FdConfig::<f64>::gradient_default();
        let c = [2.0, -3.0, 0.5];
        let g = fd_gradient(
            |x| c.iter().zip(x).map(|(a, b)| a * b).sum::<f64>(),
            &[1.0, 1.0, 1.0],
            &cfg,
        );
        for (gi, ci) in g.iter().zip(&c) {
            assert!((gi - ci).abs() < 1e-9, "{gi} vs {ci}");
        }
        let z = fd_gradient(|_| 7.0, &[1.0, 2.0], &cfg);
        assert!(z.iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn fd_hessian_quadratic_form() {
        // f(x) = x' Q x with Q = [[1, 2], [2, 5]]; Hessian = 2Q.
        let q = [[1.0, 2.0], [2.0, 5.0]];
        let f = |x: &[f64]| {
            let mut s = 0.0;
            for a in 0..2 {
                for b in 0..2 {
                    s += x[a] * q[a][b] * x[b];
                }
            }
            s
        };
        let cfg = FdConfig::<f64>::hessian_default();
        let h = fd_hessian(f, &[0.3, -0.7], &cfg);
        for a in 0..2 {
            for b in 0..2 {
                assert!((h[a][b] - 2.0 * q[a][b]).abs() < 1e-6, "({a},{b}): {}", h[a][b]);
            }
        }
    }

    #[test]
    fn fd_hessian_of_hv_single_point() {
        // HV = (9-y1)(10-y2)(12-y3): d2/dy1 dy2 = 12 - y3 = 5.
        let r = [9.0, 10.0, 12.0];
        let cfg = FdConfig::<f64>::hessian_default();
        let h = fd_hessian(
            |y| crate::hypervolume::hv_points(&[y.to_vec()], &r),
            &[5.0, 3.0, 7.0],
            &cfg,
        );
        assert!(cfg.within(h[0][1], 5.0), "{}", h[0][1]);
    }

    #[test]
    fn fd_hessian_support_of_example2_is_thirty() {
        let set = example2();
        let r = set.reference().to_vec();
        let flat: Vec<f64> = set.points().iter().flatten().copied().collect();
        let cfg = FdConfig::<f64>::hessian_default();
        let h = fd_hessian(
            |v| {
                let pts: Vec<Vec<f64>> = v.chunks(3).map(<[f64]>::to_vec).collect();
                crate::hypervolume::hv_points(&pts, &r)
            },
            &flat,
            &cfg,
        );
        let support = h.iter().flatten().filter(|v| v.abs() > 1e-6).count();
        assert_eq!(support, 30);
    }

    #[test]
    fn monte_carlo_unit_box_is_exact() {
        let set = PointSet::new(vec![vec![0.0, 0.0]], vec![1.0, 1.0]).unwrap();
        let est = hv_monte_carlo(&set, 1000, 42).unwrap();
        assert_eq!(est.value, 1.0);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn monte_carlo_empty_set() {
        let set = PointSet::<f64>::new(vec![], vec![1.0, 1.0]).unwrap();
        let est = hv_monte_carlo(&set, 1000, 1).unwrap();
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let set = example1();
        let a = hv_monte_carlo(&set, 10_000, 7).unwrap();
        let b = hv_monte_carlo(&set, 10_000, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn monte_carlo_brackets_example1() {
        let est = hv_monte_carlo(&example1(), 1_000_000, 123).unwrap();
        let dev = (est.value - 210.0).abs();
        assert!(dev <= 3.0 * est.std_error, "dev {dev} vs 3 sigma {}", 3.0 * est.std_error);
    }
}
