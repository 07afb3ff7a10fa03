//! Majorant vectors for the direct sum `p ⊕ q` and the entropic bounds built
//! from them.
//!
//! Index conventions used throughout (1-based, as in the formulas):
//! `λ` is zero-padded to length `2N`, `s_0 = 0`, and `s_j = 1` for `j ≥ N`.
//!
//! The mixed-state majorant is assembled from an auxiliary vector `S` of
//! partial-sum bounds,
//!
//! ```text
//! k = 2n:    S_k = Σ_{i=1..n} λ_i (1 + s_{k−i}) + Σ_{i=n+1..k} λ_i (1 − s_{i−1})
//! k = 2n+1:  S_k = Σ_{i=1..n} λ_i (1 + s_{k−i}) + λ_{n+1} + Σ_{i=n+2..k} λ_i (1 − s_{i−1})
//! ```
//!
//! and `W^(λ)_k = S_k − S_{k−1}`. [`w_lambda`] evaluates the differences in
//! closed form,
//!
//! ```text
//! W^(λ)_k = Σ_{i=1..⌈k/2⌉−1} λ_i (s_{k−i} − s_{k−i−1}) + λ_{⌈k/2⌉} s_{⌊k/2⌋} + λ_k (1 − s_{k−1}),
//! ```
//!
//! so that the first two entries and the pure-state case come out exactly.

mod baselines;
mod entropic;
mod lemma;
mod subcoeff;

pub use baselines::{comparison_bounds, Baseline, BaselineValue};
pub use entropic::{conditional_bound, renyi_bound, shannon_bound, tsallis_bound};
pub use lemma::{lemma_rhs, mu_vector, proposition_rhs};
pub use subcoeff::{
    sub_coefficients, sub_coefficients_with_limit, w_vector, SubCoefficients, DEFAULT_MAX_DIMENSION,
};

use nalgebra::DMatrix;

use crate::majorize::{JointDistribution, WeightVector};
use crate::states::Spectrum;

/// Which construction produced a [`MajorantVector`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MajorantKind {
    /// `{1} ⊕ W`, valid for pure states; length `N + 1`.
    Pure,
    /// `W^(λ)`; length `2N`.
    Mixed,
}

/// A vector with total 2 that majorizes `p ⊕ q`.
#[derive(Clone, Debug, PartialEq)]
pub struct MajorantVector {
    values: WeightVector,
    kind: MajorantKind,
}

impl MajorantVector {
    pub fn values(&self) -> &[f64] {
        self.values.values()
    }

    pub fn weights(&self) -> &WeightVector {
        &self.values
    }

    pub fn kind(&self) -> MajorantKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `{1} ⊕ W`, the pure-state majorant.
pub fn pure_majorant(s: &SubCoefficients) -> MajorantVector {
    let mut v = vec![1.0];
    v.extend_from_slice(s.w_vector().values());
    MajorantVector {
        values: WeightVector::from_nonnegative(v),
        kind: MajorantKind::Pure,
    }
}

/// The vector `S` (length `2N`) of upper bounds on the partial sums of `(p ⊕ q)↓`.
pub fn capital_s(s: &SubCoefficients, lambda: &Spectrum) -> Vec<f64> {
    let n = s.dim();
    let l = |i: usize| lambda.get(i - 1);
    (1..=2 * n)
        .map(|k| {
            let half = k / 2;
            let mut total = 0.0;
            for i in 1..=half {
                total += l(i) * (1.0 + s.get(k - i));
            }
            let tail_from = if k % 2 == 0 {
                half + 1
            } else {
                total += l(half + 1);
                half + 2
            };
            for i in tail_from..=k {
                total += l(i) * (1.0 - s.get(i - 1));
            }
            total
        })
        .collect()
}

/// `W^(λ)`, the mixed-state majorant of length `2N`.
pub fn w_lambda(s: &SubCoefficients, lambda: &Spectrum) -> MajorantVector {
    let n = s.dim();
    let l = |i: usize| lambda.get(i - 1);
    let v = (1..=2 * n)
        .map(|k| {
            let up = k.div_ceil(2);
            let down = k / 2;
            let mut total = 0.0;
            for i in 1..up {
                total += l(i) * (s.get(k - i) - s.get(k - i - 1));
            }
            total += l(up) * s.get(down);
            total += l(k) * (1.0 - s.get(k - 1));
            total
        })
        .collect();
    MajorantVector {
        values: WeightVector::from_nonnegative(v),
        kind: MajorantKind::Mixed,
    }
}

/// The `2N × N` matrix with `Λ W = W^(λ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaMatrix {
    matrix: DMatrix<f64>,
}

impl LambdaMatrix {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// `Λ x` for a vector of length `N`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.matrix.ncols(), "length mismatch");
        self.matrix
            .row_iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Builds `Λ` for dimension `n`. Row `k`, column `j` (1-based) holds
/// `λ_⌈k/2⌉` for `j ≤ ⌊k/2⌋`, `λ_{k−j}` for `⌊k/2⌋ < j < k` and `λ_k` for
/// `j ≥ k`, with `λ_i = 0` past the end of the spectrum.
pub fn lambda_matrix(lambda: &Spectrum, n: usize) -> LambdaMatrix {
    let l = |i: usize| lambda.get(i - 1);
    let matrix = DMatrix::from_fn(2 * n, n, |r, c| {
        let (k, j) = (r + 1, c + 1);
        if j <= k / 2 {
            l(k.div_ceil(2))
        } else if j < k {
            l(k - j)
        } else {
            l(k)
        }
    });
    LambdaMatrix { matrix }
}

/// `P = ½ Λ diag(W)`: a `2N × N` joint distribution with marginals `½W^(λ)`
/// (rows) and `W` (columns).
pub fn joint_distribution(lambda: &Spectrum, s: &SubCoefficients) -> JointDistribution {
    let lam = lambda_matrix(lambda, s.dim());
    let w = s.w_vector();
    let mut m = lam.matrix.clone();
    for (j, mut col) in m.column_iter_mut().enumerate() {
        col *= 0.5 * w.values()[j];
    }
    JointDistribution::new(m).expect("½ Λ diag(W) is a normalized distribution")
}
