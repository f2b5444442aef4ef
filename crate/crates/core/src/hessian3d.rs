//! Triple dimension sweep computing every non-zero entry of the 3-D
//! objective-space Hessian in `O(n log n)` time and `O(n)` space.
//!
//! One sweep fixes a height axis `h` and the two remaining plane axes
//! `(l, w)`. Points are processed in ascending `h`-coordinate while a
//! balanced tree holds the mutually non-dominated `(l, w)`-projections of
//! the points processed so far. When point `c` is inserted, those
//! projections bound the staircase region whose area is `|dHV/dc_h|`, and
//! the mixed second derivatives in row `(c, h)` are exactly the edge
//! lengths of that staircase polygon:
//!
//! * `(c_h, c_l)` = `+(a_w - c_w)` and `(c_h, c_w)` = `+(b_l - c_l)`, where
//!   `a` is the nearest front member left of `c` and `b` the nearest below
//!   (reference-valued sentinels when absent);
//! * each front member removed or bordering contributes one negated edge
//!   length as a cross-point entry.
//!
//! Three sweeps with `(l, w, h)` set to `(0,1,2)`, `(0,2,1)`, `(2,1,0)`
//! cover every ordered axis pair; transposed duplicates across sweeps must
//! agree and are stored canonically.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{HvError, Result};
use crate::geometry::{check_general_position, PointSet};
use crate::scalar::Real;
use crate::sparse::SparseSymMatrix;

/// Absolute/relative tolerance for transposed duplicate entries produced by
/// two different sweeps.
pub const SWEEP_MERGE_TOL: f64 = 1e-12;

/// A neighbor of the inserted point in the plane front. Sentinels carry
/// one reference coordinate and one infinite coordinate, so every
/// insertion has a left and a lower neighbor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrontNeighbor<T> {
    Sentinel { l: T, w: T },
    Member { id: usize, l: T, w: T },
}

impl<T: Copy> FrontNeighbor<T> {
    pub fn l(&self) -> T {
        match *self {
            FrontNeighbor::Sentinel { l, .. } | FrontNeighbor::Member { l, .. } => l,
        }
    }

    pub fn w(&self) -> T {
        match *self {
            FrontNeighbor::Sentinel { w, .. } | FrontNeighbor::Member { w, .. } => w,
        }
    }

    pub fn id(&self) -> Option<usize> {
        match *self {
            FrontNeighbor::Sentinel { .. } => None,
            FrontNeighbor::Member { id, .. } => Some(id),
        }
    }
}

/// A front member removed by an insertion, in ascending-`l` order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RemovedMember<T> {
    pub id: usize,
    pub l: T,
    pub w: T,
}

/// Everything one insertion reveals: the maximal run of front members the
/// new point dominates in the plane (removed), bracketed by the nearest
/// lower neighbor in `l` and the nearest lower neighbor in `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct InsertOutcome<T> {
    /// The inserted point was itself dominated in the plane; the front is
    /// unchanged. Impossible for mutually non-dominated input processed in
    /// ascending height order.
    pub dominated: bool,
    pub removed: Vec<RemovedMember<T>>,
    /// Nearest front member with strictly smaller `l` (top cap of the
    /// staircase region).
    pub left: FrontNeighbor<T>,
    /// First front member past the removed run, i.e. nearest with smaller
    /// `w` (right cap).
    pub lower: FrontNeighbor<T>,
}

impl<T: Real> InsertOutcome<T> {
    /// Area of the staircase region gained by inserting `(c_l, c_w)`:
    /// the exclusive contribution of the new point against the old front.
    pub fn area_gained(&self, c_l: T, c_w: T) -> T {
        if self.dominated {
            return T::zero();
        }
        let mut area = T::zero();
        let mut w_prev = self.left.w();
        for d in &self.removed {
            area = area + (w_prev - d.w) * (d.l - c_l);
            w_prev = d.w;
        }
        area + (w_prev - c_w) * (self.lower.l() - c_l)
    }
}

/// Finite float as a total-order tree key; front keys are never NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Key<T>(T);

impl<T: Real> Eq for Key<T> {}

impl<T: Real> PartialOrd for Key<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Real> Ord for Key<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.partial_cmp(&other.0).expect("front keys are finite")
    }
}

/// Balanced-tree front of mutually non-dominated 2-D points, keyed by the
/// `l`-coordinate (strictly increasing `l`, strictly decreasing `w`).
#[derive(Debug, Clone)]
pub struct SweepFront<T: Real> {
    tree: BTreeMap<Key<T>, (T, usize)>,
    ref_l: T,
    ref_w: T,
}

impl<T: Real> SweepFront<T> {
    /// An empty front bounded by sentinels at `(-inf, ref_w)` and
    /// `(ref_l, -inf)`.
    pub fn new(ref_l: T, ref_w: T) -> Self {
        Self { tree: BTreeMap::new(), ref_l, ref_w }
    }

    /// Number of real (non-sentinel) members.
    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    fn left_sentinel(&self) -> FrontNeighbor<T> {
        FrontNeighbor::Sentinel { l: T::neg_infinity(), w: self.ref_w }
    }

    fn lower_sentinel(&self) -> FrontNeighbor<T> {
        FrontNeighbor::Sentinel { l: self.ref_l, w: T::neg_infinity() }
    }

    /// Inserts `(l, w)` tagged `id`, removing the run it dominates and
    /// reporting its bracketing neighbors.
    ///
    /// If the point is weakly dominated by an existing member, the front is
    /// left untouched and `dominated` is set.
    pub fn insert(&mut self, id: usize, l: T, w: T) -> InsertOutcome<T> {
        let key = Key(l);

        // The predecessor (largest key <= l) has the smallest w among
        // members left of or at l; it alone decides domination.
        if let Some((&pk, &(pw, pid))) = self.tree.range(..=key).next_back() {
            if pw <= w {
                return InsertOutcome {
                    dominated: true,
                    removed: Vec::new(),
                    left: FrontNeighbor::Member { id: pid, l: pk.0, w: pw },
                    lower: self.lower_sentinel(),
                };
            }
        }

        // Members with key >= l and w >= w form a contiguous run dominated
        // by the new point (w decreases along increasing l).
        let mut removed = Vec::new();
        let mut lower = self.lower_sentinel();
        for (&k, &(mw, mid)) in self.tree.range(key..) {
            if mw >= w {
                removed.push(RemovedMember { id: mid, l: k.0, w: mw });
            } else {
                lower = FrontNeighbor::Member { id: mid, l: k.0, w: mw };
                break;
            }
        }
        for d in &removed {
            self.tree.remove(&Key(d.l));
        }

        let left = self
            .tree
            .range(..key)
            .next_back()
            .map(|(&k, &(mw, mid))| FrontNeighbor::Member { id: mid, l: k.0, w: mw })
            .unwrap_or_else(|| self.left_sentinel());

        self.tree.insert(key, (w, id));
        InsertOutcome { dominated: false, removed, left, lower }
    }
}

/// Per-sweep instrumentation: total removals amortize to
/// `processed - final_front_len`, which never exceeds `n - 1`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepPassStats {
    /// Points actually inserted into the front (the non-dominated ones).
    pub processed: usize,
    /// Points skipped because an earlier, lower point dominates them.
    pub skipped_dominated: usize,
    pub removed: usize,
    pub final_front_len: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepStats {
    pub passes: [SweepPassStats; 3],
}

/// The three `(l, w, h)` axis assignments, 0-based.
const SWEEP_AXES: [(usize, usize, usize); 3] = [(0, 1, 2), (0, 2, 1), (2, 1, 0)];

/// All non-zero entries of the objective-space Hessian for `m = 3`.
///
/// Requires general position; strictly dominated points contribute
/// structurally zero rows and columns. Each sweep stores at most `6n - 4`
/// cells, so the full symmetric matrix has at most `18n - 12` non-zeros.
pub fn hessian_3d_sweep<T: Real>(set: &PointSet<T>) -> Result<SparseSymMatrix<T>> {
    hessian_3d_sweep_with_stats(set).map(|(m, _)| m)
}

/// As [`hessian_3d_sweep`], also returning sweep instrumentation.
pub fn hessian_3d_sweep_with_stats<T: Real>(
    set: &PointSet<T>,
) -> Result<(SparseSymMatrix<T>, SweepStats)> {
    let m = set.dim();
    if m != 3 {
        return Err(HvError::DimensionMismatch { expected: 3, got: m });
    }
    let report = check_general_position(set.points());
    if !report.ok() {
        return Err(HvError::GeneralPosition(report));
    }

    let points = set.points();
    let r = set.reference();

    let mut raw: BTreeMap<(usize, usize), T> = BTreeMap::new();
    let mut stats = SweepStats::default();

    for (pass, &(l, w, h)) in SWEEP_AXES.iter().enumerate() {
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| {
            points[a][h].partial_cmp(&points[b][h]).expect("finite coordinates")
        });

        let mut front = SweepFront::new(r[l], r[w]);
        let mut removed_total = 0usize;
        let mut inserted = 0usize;
        let mut skipped = 0usize;

        for &idx in &order {
            let (c_l, c_w) = (points[idx][l], points[idx][w]);
            let out = front.insert(idx, c_l, c_w);
            // Processing in ascending h makes plane domination equivalent
            // to 3-D domination by an earlier point, so dominated points
            // are skipped here without a quadratic pre-filter.
            if out.dominated {
                skipped += 1;
                continue;
            }
            inserted += 1;
            removed_total += out.removed.len();

            let row = idx * 3 + h;
            // Same-point entries: edge lengths at the corner of the polygon.
            raw.insert((row, idx * 3 + l), out.left.w() - c_w);
            raw.insert((row, idx * 3 + w), out.lower.l() - c_l);

            // Cross entries with the bracketing neighbors.
            if let Some(a_id) = out.left.id() {
                let first_l = out.removed.first().map_or(out.lower.l(), |d| d.l);
                raw.insert((row, a_id * 3 + w), -(first_l - c_l));
            }
            if let Some(b_id) = out.lower.id() {
                let last_w = out.removed.last().map_or(out.left.w(), |d| d.w);
                raw.insert((row, b_id * 3 + l), -(last_w - c_w));
            }

            // Cross entries with the dominated run: each member's two edges.
            let mut w_prev = out.left.w();
            for (j, d) in out.removed.iter().enumerate() {
                let next_l = out.removed.get(j + 1).map_or(out.lower.l(), |e| e.l);
                raw.insert((row, d.id * 3 + l), -(w_prev - d.w));
                raw.insert((row, d.id * 3 + w), -(next_l - d.l));
                w_prev = d.w;
            }
        }

        stats.passes[pass] = SweepPassStats {
            processed: inserted,
            skipped_dominated: skipped,
            removed: removed_total,
            final_front_len: front.len(),
        };
    }

    let matrix = merge_sweep_entries(raw, set.len() * 3)?;
    Ok((matrix, stats))
}

/// Folds raw ordered emissions into canonical storage, verifying that
/// transposed duplicates from different sweeps agree.
fn merge_sweep_entries<T: Real>(
    raw: BTreeMap<(usize, usize), T>,
    size: usize,
) -> Result<SparseSymMatrix<T>> {
    let tol = T::of(SWEEP_MERGE_TOL);
    let mut matrix = SparseSymMatrix::new(size);
    for (&(rr, cc), &v) in &raw {
        if rr > cc {
            continue; // handled from the transposed cell
        }
        let value = match raw.get(&(cc, rr)) {
            Some(&t) if rr != cc => {
                if !crate::scalar::close(v, t, tol, tol) {
                    return Err(HvError::SweepMergeConflict {
                        row: rr,
                        col: cc,
                        a: v.to_f64().unwrap_or(f64::NAN),
                        b: t.to_f64().unwrap_or(f64::NAN),
                    });
                }
                (v + t) / T::of(2.0)
            }
            _ => v,
        };
        matrix.set(rr, cc, value);
    }
    // Lone lower-triangle emissions without a transposed partner.
    for (&(rr, cc), &v) in &raw {
        if rr > cc && !raw.contains_key(&(cc, rr)) {
            matrix.set(cc, rr, v);
        }
    }
    Ok(matrix)
}
