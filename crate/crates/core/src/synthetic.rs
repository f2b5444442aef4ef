//! Seeded generators for random test instances: 3-D mutually non-dominated
//! fronts (benchmarks, sweep tests) and general-position sets of arbitrary
//! dimension with finite-difference-safe coordinate gaps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{check_general_position, PointSet};
use crate::scalar::Real;

/// `n` mutually non-dominated points in general position on the plane
/// `x + y + z = 100`, with reference `(50, 50, 105)`.
///
/// Equal coordinate sums make strict domination impossible; continuous
/// sampling makes coordinate collisions vanishing. Deterministic per seed.
pub fn random_front_3d<T: Real>(n: usize, seed: u64) -> PointSet<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut points = Vec::with_capacity(n);
        for _ in 0..n {
            let x = rng.random_range(1.0..40.0);
            let y = rng.random_range(1.0..40.0);
            let z = 100.0 - x - y;
            points.push(vec![T::of(x), T::of(y), T::of(z)]);
        }
        if check_general_position(&points).ok() {
            let reference = vec![T::of(50.0), T::of(50.0), T::of(105.0)];
            return PointSet::new(points, reference).expect("front dominates reference");
        }
    }
}

/// `n` points in `R^m` in general position with per-axis coordinate gaps of
/// at least `0.48 / n` and reference `(1.5, ..., 1.5)`.
///
/// Each axis gets a jittered permutation of a regular grid, so domination
/// patterns are arbitrary (dominated points do occur) while every
/// finite-difference stencil up to that gap stays within one
/// differentiability cell. Coordinates stay below 1.2, keeping hypervolume
/// magnitudes small enough that second-difference rounding noise sits well
/// under the 1e-6 absolute oracle tolerance.
pub fn random_general_position_set<T: Real>(m: usize, n: usize, seed: u64) -> PointSet<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spacing = 1.2 / n.max(1) as f64;
    let mut coords = vec![vec![0.0f64; n]; m];
    for axis in coords.iter_mut() {
        let mut slots: Vec<usize> = (0..n).collect();
        slots.shuffle(&mut rng);
        for (j, &slot) in slots.iter().enumerate() {
            axis[j] = (slot as f64 + 0.2 + 0.6 * rng.random::<f64>()) * spacing;
        }
    }
    let points: Vec<Vec<T>> =
        (0..n).map(|j| (0..m).map(|k| T::of(coords[k][j])).collect()).collect();
    let reference = vec![T::of(1.5); m];
    debug_assert!(check_general_position(&points).ok());
    PointSet::new(points, reference).expect("grid points dominate reference")
}
