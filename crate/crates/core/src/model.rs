//! Twice-differentiable objective model: evaluation, per-point Jacobian,
//! and per-objective Hessian blocks, used by the decision-space chain rule.

use crate::scalar::Real;

/// A vector-valued objective `f: R^d -> R^m` with analytic derivatives.
///
/// `jacobian` returns the `m x d` matrix row-major; `hessian_blocks`
/// returns `m` symmetric `d x d` blocks, each row-major. Off-point blocks
/// of the full second-derivative tensor are structurally zero, which is
/// what makes the chain-rule correction term block-diagonal.
pub trait ObjectiveModel<T: Real> {
    fn objective_dim(&self) -> usize;
    fn decision_dim(&self) -> usize;
    fn evaluate(&self, x: &[T]) -> Vec<T>;
    fn jacobian(&self, x: &[T]) -> Vec<T>;
    fn hessian_blocks(&self, x: &[T]) -> Vec<Vec<T>>;
}

/// `f(x) = x`; derivatives in decision space equal those in objective space.
#[derive(Debug, Clone, Copy)]
pub struct IdentityModel {
    pub dim: usize,
}

impl<T: Real> ObjectiveModel<T> for IdentityModel {
    fn objective_dim(&self) -> usize {
        self.dim
    }

    fn decision_dim(&self) -> usize {
        self.dim
    }

    fn evaluate(&self, x: &[T]) -> Vec<T> {
        x.to_vec()
    }

    fn jacobian(&self, _x: &[T]) -> Vec<T> {
        let mut j = vec![T::zero(); self.dim * self.dim];
        for k in 0..self.dim {
            j[k * self.dim + k] = T::one();
        }
        j
    }

    fn hessian_blocks(&self, _x: &[T]) -> Vec<Vec<T>> {
        vec![vec![T::zero(); self.dim * self.dim]; self.dim]
    }
}

/// `f(x) = B x` for a constant `m x d` matrix `B`; second derivatives vanish.
#[derive(Debug, Clone)]
pub struct LinearModel<T> {
    matrix: Vec<T>,
    m: usize,
    d: usize,
}

impl<T: Real> LinearModel<T> {
    /// `matrix` is `m x d` row-major.
    pub fn new(matrix: Vec<T>, m: usize, d: usize) -> Self {
        assert_eq!(matrix.len(), m * d, "matrix shape mismatch");
        Self { matrix, m, d }
    }
}

impl<T: Real> ObjectiveModel<T> for LinearModel<T> {
    fn objective_dim(&self) -> usize {
        self.m
    }

    fn decision_dim(&self) -> usize {
        self.d
    }

    fn evaluate(&self, x: &[T]) -> Vec<T> {
        (0..self.m)
            .map(|k| {
                let mut s = T::zero();
                for a in 0..self.d {
                    s = s + self.matrix[k * self.d + a] * x[a];
                }
                s
            })
            .collect()
    }

    fn jacobian(&self, _x: &[T]) -> Vec<T> {
        self.matrix.clone()
    }

    fn hessian_blocks(&self, _x: &[T]) -> Vec<Vec<T>> {
        vec![vec![T::zero(); self.d * self.d]; self.m]
    }
}
