//! Exact hypervolume indicator and hypervolume contribution for arbitrary
//! dimension, with fast special cases for m in {1, 2, 3}.
//!
//! `m = 2` is a sorted staircase sweep, `m = 3` a dimension sweep with an
//! incrementally maintained plane front, and `m >= 4` recursive slicing
//! along the last axis: each slab contributes its thickness times the
//! `(m-1)`-dimensional hypervolume of the projections accumulated so far.
//! All routes are exact for integer-valued inputs.

use crate::error::{HvError, Result};
use crate::geometry::{clip_unchecked, pareto_filter, weakly_dominates, PointSet};
use crate::hessian3d::SweepFront;
use crate::scalar::Real;

/// Hypervolume value plus how many input points were dominated (or
/// duplicated) and therefore contributed nothing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HvResult<T> {
    pub value: T,
    pub dominated_count: usize,
}

/// Lebesgue measure of the union of boxes `[y, r]` over the set.
pub fn hv<T: Real>(set: &PointSet<T>) -> HvResult<T> {
    let kept = pareto_filter(set.points());
    let dominated_count = set.len() - kept.len();
    let survivors: Vec<Vec<T>> = kept.iter().map(|&i| set.point(i).to_vec()).collect();
    HvResult { value: hv_points(&survivors, set.reference()), dominated_count }
}

/// Hypervolume of an arbitrary point list against `reference`.
///
/// Total on any finite input: points failing to strictly dominate the
/// reference span an empty box and are ignored. A zero-dimensional space
/// carries the counting measure (1 if any point remains, else 0), which is
/// what the derivative recursions bottom out on.
pub fn hv_points<T: Real>(points: &[Vec<T>], reference: &[T]) -> T {
    let m = reference.len();
    if m == 0 {
        return if points.is_empty() { T::zero() } else { T::one() };
    }
    let alive: Vec<&[T]> = points
        .iter()
        .filter(|p| p.iter().zip(reference).all(|(c, r)| c < r))
        .map(Vec::as_slice)
        .collect();
    if alive.is_empty() {
        return T::zero();
    }
    match m {
        1 => {
            let mut best = alive[0][0];
            for p in &alive[1..] {
                best = best.min(p[0]);
            }
            reference[0] - best
        }
        2 => hv_2d(&alive, reference),
        3 => hv_3d(&alive, reference),
        _ => hv_slice(&alive, reference),
    }
}

fn hv_2d<T: Real>(points: &[&[T]], r: &[T]) -> T {
    let mut order: Vec<&[T]> = points.to_vec();
    order.sort_by(|a, b| (a[0], a[1]).partial_cmp(&(b[0], b[1])).expect("finite"));
    let mut best = r[1];
    let mut area = T::zero();
    for p in order {
        if p[1] < best {
            area = area + (r[0] - p[0]) * (best - p[1]);
            best = p[1];
        }
    }
    area
}

fn hv_3d<T: Real>(points: &[&[T]], r: &[T]) -> T {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        (points[a][2], a).partial_cmp(&(points[b][2], b)).expect("finite")
    });

    let mut front = SweepFront::new(r[0], r[1]);
    let mut area = T::zero();
    let mut volume = T::zero();
    for (t, &idx) in order.iter().enumerate() {
        let p = points[idx];
        let out = front.insert(idx, p[0], p[1]);
        area = area + out.area_gained(p[0], p[1]);
        let next_h = order.get(t + 1).map_or(r[2], |&j| points[j][2]);
        volume = volume + area * (next_h - p[2]);
    }
    volume
}

/// Slab decomposition along the last axis; ties break by point index.
fn hv_slice<T: Real>(points: &[&[T]], r: &[T]) -> T {
    let m = r.len();
    let h = m - 1;
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| (points[a][h], a).partial_cmp(&(points[b][h], b)).expect("finite"));

    let r_proj = &r[..h];
    let mut front: Vec<Vec<T>> = Vec::new();
    let mut volume = T::zero();
    for (t, &idx) in order.iter().enumerate() {
        let proj = points[idx][..h].to_vec();
        if !front.iter().any(|q| weakly_dominates(q, &proj)) {
            front.retain(|q| !weakly_dominates(&proj, q));
            front.push(proj);
        }
        let next_h = order.get(t + 1).map_or(r[h], |&j| points[j][h]);
        let thickness = next_h - points[idx][h];
        if thickness > T::zero() {
            volume = volume + thickness * hv_points(&front, r_proj);
        }
    }
    volume
}

/// Hypervolume contribution of `y` against `others`: the measure of the
/// region dominated exclusively by `y`.
///
/// Computed as `vol([y, r]) - hv(clip(others; y))`; clipping the others up
/// to `y` intersects their boxes with `[y, r]` without changing the
/// exclusive region.
pub fn hvc<T: Real>(y: &[T], others: &[Vec<T>], reference: &[T]) -> Result<T> {
    let m = y.len();
    if reference.len() != m {
        return Err(HvError::DimensionMismatch { expected: m, got: reference.len() });
    }
    for o in others {
        if o.len() != m {
            return Err(HvError::DimensionMismatch { expected: m, got: o.len() });
        }
    }
    for (axis, (c, r)) in y.iter().zip(reference).enumerate() {
        // NaN coordinates must also land here, hence no `>=`.
        if c.partial_cmp(r) != Some(std::cmp::Ordering::Less) {
            return Err(HvError::ReferenceNotDominated { point: 0, axis });
        }
    }
    Ok(hvc_unchecked(y, others, reference))
}

pub(crate) fn hvc_unchecked<T: Real>(y: &[T], others: &[Vec<T>], reference: &[T]) -> T {
    if others.iter().any(|o| weakly_dominates(o, y)) {
        return T::zero();
    }
    let mut own = T::one();
    for (c, r) in y.iter().zip(reference) {
        own = own * (*r - *c);
    }
    if others.is_empty() {
        return own;
    }
    let clipped: Vec<Vec<T>> = others.iter().map(|o| clip_unchecked(o, y)).collect();
    own - hv_points(&clipped, reference)
}
