//! Bounds on sums of `m` outcome probabilities from the first basis and `n`
//! from the second.

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix};
use crate::majorize::WeightVector;
use crate::states::Spectrum;
use crate::Tolerances;

use super::SubCoefficients;

/// `μ = 1 + (σ(A) ⊕ −σ(A))`, zero-padded to length `m + n` and sorted
/// descending, for the `n × m` overlap block `A_ij = ⟨a_i|j⟩`.
pub fn mu_vector(a: &ComplexMatrix, m: usize, n: usize) -> Result<WeightVector> {
    if a.rows() != n || a.cols() != m {
        return Err(Error::InvalidArguments(format!(
            "overlap block is {}x{}, expected {n}x{m}",
            a.rows(),
            a.cols()
        )));
    }
    let sigma = linalg::singular_values(a)?;
    let tol = Tolerances::default().normalization;
    if let Some(&top) = sigma.first() {
        if top > 1.0 + tol {
            return Err(Error::InvalidOverlap(top));
        }
    }
    let mut mu = Vec::with_capacity(m + n);
    for &s in &sigma {
        let s = s.min(1.0);
        mu.push(1.0 + s);
        mu.push(1.0 - s);
    }
    mu.resize(m + n, 1.0);
    mu.sort_by(|a, b| b.total_cmp(a));
    Ok(WeightVector::from_nonnegative(mu))
}

/// `λ↓ · μ↓`, an upper bound on `p_1 + … + p_m + q_1 + … + q_n`.
pub fn lemma_rhs(lambda: &Spectrum, a: &ComplexMatrix, m: usize, n: usize) -> Result<f64> {
    let mu = mu_vector(a, m, n)?;
    Ok(mu
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| lambda.get(i) * v)
        .sum())
}

/// Upper bound on the sum of `m` probabilities of one measurement and `n` of
/// the other, for `n ≤ m ≤ N`, in terms of the coefficients `s`:
///
/// ```text
/// Σ_{i=1..n} λ_i (1 + s_{n+m−i}) + Σ_{i=n+1..m} λ_i + Σ_{i=1..n} λ_{m+i} (1 − s_{m+i−1})
/// ```
///
/// `n = 0` is accepted and gives the sum of the `m` largest eigenvalues.
pub fn proposition_rhs(lambda: &Spectrum, s: &SubCoefficients, m: usize, n: usize) -> Result<f64> {
    if n > m {
        return Err(Error::InvalidArguments(format!(
            "expected n <= m, got m = {m}, n = {n}; swap the roles of the bases"
        )));
    }
    if m == 0 || m > s.dim() {
        return Err(Error::InvalidArguments(format!(
            "m = {m} must lie in 1..={}",
            s.dim()
        )));
    }
    let l = |i: usize| lambda.get(i - 1);
    let mut total = 0.0;
    for i in 1..=n {
        total += l(i) * (1.0 + s.get(n + m - i));
    }
    for i in n + 1..=m {
        total += l(i);
    }
    for i in 1..=n {
        total += l(m + i) * (1.0 - s.get(m + i - 1));
    }
    Ok(total)
}
