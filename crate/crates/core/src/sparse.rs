//! Coordinate-format sparse symmetric matrix used for objective- and
//! decision-space Hessians.

use std::collections::BTreeMap;

use crate::scalar::Real;

/// Sparse symmetric square matrix.
///
/// Entries are stored once, canonically with `row <= col`; queries and
/// iteration expose the full symmetric closure. Exact zeros are never
/// stored, so the support is the set of structurally non-zero cells.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSymMatrix<T> {
    size: usize,
    upper: BTreeMap<(usize, usize), T>,
}

impl<T: Real> SparseSymMatrix<T> {
    pub fn new(size: usize) -> Self {
        Self { size, upper: BTreeMap::new() }
    }

    /// Side length of the square matrix.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Sets both `(r, c)` and `(c, r)` to `v`. Zero values clear the cell.
    pub fn set(&mut self, r: usize, c: usize, v: T) {
        assert!(r < self.size && c < self.size, "index out of bounds");
        let key = (r.min(c), r.max(c));
        if v == T::zero() {
            self.upper.remove(&key);
        } else {
            self.upper.insert(key, v);
        }
    }

    /// Value at `(r, c)`; absent cells are zero.
    pub fn get(&self, r: usize, c: usize) -> T {
        let key = (r.min(c), r.max(c));
        self.upper.get(&key).copied().unwrap_or_else(T::zero)
    }

    /// Non-zero count of the full matrix (off-diagonal cells count twice).
    pub fn nnz(&self) -> usize {
        self.upper.keys().map(|&(r, c)| if r == c { 1 } else { 2 }).sum()
    }

    /// Canonical entries with `row <= col`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        self.upper.iter().map(|(&(r, c), &v)| (r, c, v))
    }

    /// Full symmetric closure, both orientations of each off-diagonal cell.
    pub fn entries_full(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        self.upper.iter().flat_map(|(&(r, c), &v)| {
            let mirror = if r == c { None } else { Some((c, r, v)) };
            std::iter::once((r, c, v)).chain(mirror)
        })
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<T> {
        let mut dense = vec![T::zero(); self.size * self.size];
        for (r, c, v) in self.entries_full() {
            dense[r * self.size + c] = v;
        }
        dense
    }

    /// Largest absolute difference over the union of both supports.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for (r, c, v) in self.entries() {
            worst = worst.max((v - other.get(r, c)).abs());
        }
        for (r, c, v) in other.entries() {
            worst = worst.max((v - self.get(r, c)).abs());
        }
        worst
    }

    /// `true` when both matrices have the same support after dropping
    /// entries of magnitude at most `drop_tol`.
    pub fn support_equal(&self, other: &Self, drop_tol: T) -> bool {
        let sig = |m: &Self| {
            m.entries()
                .filter(|&(_, _, v)| v.abs() > drop_tol)
                .map(|(r, c, _)| (r, c))
                .collect::<Vec<_>>()
        };
        sig(self) == sig(other)
    }
}
