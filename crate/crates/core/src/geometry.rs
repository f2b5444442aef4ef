//! Geometric primitives shared by every other module: Pareto dominance,
//! axis projection, clipping, set vectorization, and input validation.
//!
//! All operations use the minimization convention: smaller coordinates are
//! better, and every point of a valid [`PointSet`] strictly dominates the
//! reference point componentwise.

use std::fmt;

use crate::error::{HvError, Result};
use crate::scalar::Real;

/// A single objective vector in `R^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point<T> {
    coords: Vec<T>,
}

impl<T: Real> Point<T> {
    /// Builds a point, rejecting non-finite coordinates.
    pub fn new(coords: Vec<T>) -> Result<Self> {
        for (axis, c) in coords.iter().enumerate() {
            if !c.is_finite() {
                return Err(HvError::NonFinite { point: 0, axis });
            }
        }
        Ok(Self { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }
}

impl<T: Real> std::ops::Index<usize> for Point<T> {
    type Output = T;
    fn index(&self, k: usize) -> &T {
        &self.coords[k]
    }
}

/// An ordered collection of `n` points in `R^m` together with the reference
/// point bounding the measured region from above.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet<T> {
    points: Vec<Vec<T>>,
    reference: Vec<T>,
}

impl<T: Real> PointSet<T> {
    /// As [`PointSet::new`], from typed points.
    pub fn from_points(points: Vec<Point<T>>, reference: Point<T>) -> Result<Self> {
        Self::new(
            points.into_iter().map(|p| p.coords).collect(),
            reference.coords,
        )
    }

    /// Validates dimensions, finiteness, and strict domination of the
    /// reference by every point.
    pub fn new(points: Vec<Vec<T>>, reference: Vec<T>) -> Result<Self> {
        let m = reference.len();
        for (axis, c) in reference.iter().enumerate() {
            if !c.is_finite() {
                return Err(HvError::NonFinite { point: usize::MAX, axis });
            }
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != m {
                return Err(HvError::DimensionMismatch { expected: m, got: p.len() });
            }
            for (axis, c) in p.iter().enumerate() {
                if !c.is_finite() {
                    return Err(HvError::NonFinite { point: i, axis });
                }
                if *c >= reference[axis] {
                    return Err(HvError::ReferenceNotDominated { point: i, axis });
                }
            }
        }
        Ok(Self { points, reference })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.reference.len()
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[T] {
        &self.points[i]
    }

    pub fn reference(&self) -> &[T] {
        &self.reference
    }
}

/// Which pairs of points collide on which axis, as reported by
/// [`check_general_position`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GeneralPositionReport {
    /// `(point i, point j, axis)` triples with `i < j` and equal coordinates.
    pub offending_pairs: Vec<(usize, usize, usize)>,
}

impl GeneralPositionReport {
    pub fn ok(&self) -> bool {
        self.offending_pairs.is_empty()
    }
}

impl fmt::Display for GeneralPositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "no coordinate collisions");
        }
        let (i, j, axis) = self.offending_pairs[0];
        write!(
            f,
            "{} coordinate collision(s), first: points {} and {} share axis {}",
            self.offending_pairs.len(),
            i,
            j,
            axis
        )
    }
}

/// Strict Pareto dominance for minimization: `p` dominates `q` iff `p <= q`
/// componentwise and the two differ somewhere.
pub fn dominates<T: Real>(p: &[T], q: &[T]) -> Result<bool> {
    if p.len() != q.len() {
        return Err(HvError::DimensionMismatch { expected: p.len(), got: q.len() });
    }
    Ok(dominates_unchecked(p, q))
}

/// Equal points are treated as mutually dominated duplicates; see
/// [`pareto_filter`] for the stable tiebreak.
pub(crate) fn dominates_unchecked<T: Real>(p: &[T], q: &[T]) -> bool {
    let mut strict = false;
    for (a, b) in p.iter().zip(q) {
        if a > b {
            return false;
        }
        if a < b {
            strict = true;
        }
    }
    strict
}

/// Weak dominance: `p <= q` componentwise (equality allowed everywhere).
pub(crate) fn weakly_dominates<T: Real>(p: &[T], q: &[T]) -> bool {
    p.iter().zip(q).all(|(a, b)| a <= b)
}

/// Removes coordinate `axis` (0-based), preserving the order of the rest.
pub fn project<T: Real>(p: &[T], axis: usize) -> Result<Vec<T>> {
    if axis >= p.len() {
        return Err(HvError::AxisOutOfRange { axis, dim: p.len() });
    }
    Ok(project_unchecked(p, axis))
}

pub(crate) fn project_unchecked<T: Real>(p: &[T], axis: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(p.len() - 1);
    out.extend_from_slice(&p[..axis]);
    out.extend_from_slice(&p[axis + 1..]);
    out
}

/// Clips `a` from below by `b`: componentwise `max(a_j, b_j)`.
///
/// The dominated region of the result is exactly `Dom(a) ∩ Dom(b)`, so
/// clipping the other points of a set by a pivot leaves the pivot's
/// exclusive dominated region unchanged.
pub fn clip<T: Real>(a: &[T], b: &[T]) -> Result<Vec<T>> {
    if a.len() != b.len() {
        return Err(HvError::DimensionMismatch { expected: a.len(), got: b.len() });
    }
    Ok(clip_unchecked(a, b))
}

pub(crate) fn clip_unchecked<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

/// Flattens the set into a single row-major vector of length `n*m`.
pub fn concat<T: Real>(set: &PointSet<T>) -> Vec<T> {
    let mut out = Vec::with_capacity(set.len() * set.dim());
    for p in set.points() {
        out.extend_from_slice(p);
    }
    out
}

/// Splits a vectorized set back into points of dimension `m`.
pub fn deconcat<T: Real>(v: &[T], m: usize) -> Result<Vec<Vec<T>>> {
    if m == 0 || !v.len().is_multiple_of(m) {
        return Err(HvError::BadVectorLength { len: v.len(), dim: m });
    }
    Ok(v.chunks(m).map(<[T]>::to_vec).collect())
}

/// Reports every coordinate value shared by two distinct points, per axis.
pub fn check_general_position<T: Real>(points: &[Vec<T>]) -> GeneralPositionReport {
    let mut offending = Vec::new();
    let m = points.first().map_or(0, Vec::len);
    for axis in 0..m {
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| {
            points[a][axis].partial_cmp(&points[b][axis]).expect("finite coordinates")
        });
        for w in order.windows(2) {
            if points[w[0]][axis] == points[w[1]][axis] {
                let (i, j) = (w[0].min(w[1]), w[0].max(w[1]));
                offending.push((i, j, axis));
            }
        }
    }
    offending.sort_unstable();
    GeneralPositionReport { offending_pairs: offending }
}

/// Indices of the non-dominated points, in stable input order.
///
/// Duplicates are kept once: the first occurrence wins, later copies are
/// treated as dominated (they add no volume).
pub fn pareto_filter<T: Real>(points: &[Vec<T>]) -> Vec<usize> {
    let mut keep = Vec::new();
    'outer: for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            if dominates_unchecked(q, p) || (q == p && j < i) {
                continue 'outer;
            }
        }
        keep.push(i);
    }
    keep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[f64]) -> Vec<f64> {
        v.to_vec()
    }

    #[test]
    fn dominates_examples() {
        assert!(dominates(&[1.0, 2.0], &[2.0, 3.0]).unwrap());
        assert!(!dominates(&[1.0, 2.0], &[1.0, 2.0]).unwrap());
        assert!(!dominates(&[2.0, 1.0], &[1.0, 2.0]).unwrap());
        // weak improvement on one axis is enough
        assert!(dominates(&[1.0, 2.0], &[1.0, 3.0]).unwrap());
        assert!(matches!(
            dominates(&[1.0], &[1.0, 2.0]),
            Err(HvError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn project_examples() {
        assert_eq!(project(&[5.0, 3.0, 7.0], 2).unwrap(), vec![5.0, 3.0]);
        assert_eq!(project(&[5.0, 3.0, 7.0], 0).unwrap(), vec![3.0, 7.0]);
        assert_eq!(project(&[4.0], 0).unwrap(), Vec::<f64>::new());
        assert!(matches!(
            project(&[4.0], 1),
            Err(HvError::AxisOutOfRange { .. })
        ));
    }

    #[test]
    fn clip_examples() {
        assert_eq!(clip(&[3.0, 5.0], &[4.0, 2.0]).unwrap(), vec![4.0, 5.0]);
        assert_eq!(clip(&[1.0, 1.0], &[1.0, 1.0]).unwrap(), vec![1.0, 1.0]);
        assert_eq!(clip(&[7.0, 8.0], &[0.0, 0.0]).unwrap(), vec![7.0, 8.0]);
    }

    #[test]
    fn concat_roundtrip() {
        let set = PointSet::new(
            vec![pt(&[5.0, 3.0, 7.0]), pt(&[2.0, 1.0, 10.0])],
            pt(&[9.0, 10.0, 12.0]),
        )
        .unwrap();
        let v = concat(&set);
        assert_eq!(v, vec![5.0, 3.0, 7.0, 2.0, 1.0, 10.0]);
        assert_eq!(deconcat(&v, 3).unwrap(), set.points());

        let empty = PointSet::new(vec![], pt(&[1.0])).unwrap();
        assert_eq!(concat(&empty), Vec::<f64>::new());
        assert!(matches!(
            deconcat(&[1.0, 2.0, 3.0], 2),
            Err(HvError::BadVectorLength { .. })
        ));
    }

    #[test]
    fn general_position_examples() {
        // all coordinates distinct per axis
        let ok = check_general_position(&[
            pt(&[16.0, 23.0, 1.0]),
            pt(&[14.0, 32.0, 2.0]),
            pt(&[12.0, 27.0, 3.0]),
            pt(&[10.0, 21.0, 4.0]),
            pt(&[8.0, 33.0, 5.0]),
            pt(&[6.5, 31.0, 6.0]),
        ]);
        assert!(ok.ok());

        let bad = check_general_position(&[pt(&[1.0, 2.0]), pt(&[1.0, 3.0])]);
        assert_eq!(bad.offending_pairs, vec![(0, 1, 0)]);

        assert!(check_general_position::<f64>(&[]).ok());
    }

    #[test]
    fn pareto_filter_examples() {
        assert_eq!(pareto_filter(&[pt(&[5.0, 3.0]), pt(&[2.0, 1.0])]), vec![1]);
        assert_eq!(
            pareto_filter(&[pt(&[1.0, 3.0]), pt(&[2.0, 2.0]), pt(&[3.0, 1.0])]),
            vec![0, 1, 2]
        );
        // duplicates: first occurrence wins
        assert_eq!(pareto_filter(&[pt(&[1.0, 1.0]), pt(&[1.0, 1.0])]), vec![0]);
    }

    #[test]
    fn point_set_rejects_bad_input() {
        assert!(matches!(
            PointSet::new(vec![pt(&[1.0, 2.0])], pt(&[1.0, 3.0])),
            Err(HvError::ReferenceNotDominated { point: 0, axis: 0 })
        ));
        assert!(matches!(
            PointSet::new(vec![pt(&[f64::NAN, 0.0])], pt(&[1.0, 1.0])),
            Err(HvError::NonFinite { .. })
        ));
        assert!(matches!(
            PointSet::new(vec![pt(&[0.0])], pt(&[1.0, 1.0])),
            Err(HvError::DimensionMismatch { .. })
        ));
        // n = 0 is a valid set
        assert_eq!(PointSet::<f64>::new(vec![], pt(&[1.0, 1.0])).unwrap().len(), 0);
    }

    #[test]
    fn typed_point_constructor() {
        assert!(Point::new(vec![1.0, f64::INFINITY]).is_err());
        let set = PointSet::from_points(
            vec![Point::new(vec![0.5, 0.25]).unwrap()],
            Point::new(vec![1.0, 1.0]).unwrap(),
        )
        .unwrap();
        assert_eq!(set.point(0), &[0.5, 0.25]);
        assert_eq!(set.point(0)[1], 0.25);
    }
}
