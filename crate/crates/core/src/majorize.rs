//! Majorization and the entropy functionals applied to probability vectors
//! and to majorant vectors.
//!
//! Everything is in nats, with the convention `0 ln 0 = 0`. Entries below
//! [`ZERO_CUTOFF`] count as exact zeros.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::Tolerances;

/// Entries at or below this value are treated as exact zeros.
pub const ZERO_CUTOFF: f64 = 1e-300;

/// A vector of non-negative weights with its cached total. Probability
/// vectors have total 1; direct sums `p ⊕ q` and majorants `W^(λ)` have total 2.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector {
    values: Vec<f64>,
    total: f64,
}

impl WeightVector {
    /// Entries in `[-1e-12, 0)` are clamped to zero; anything more negative or
    /// non-finite is rejected.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let clamp = Tolerances::default().negative_clamp;
        let mut values = values;
        for v in values.iter_mut() {
            if !v.is_finite() {
                return Err(Error::InvalidInput("weight is not finite".into()));
            }
            if *v < 0.0 {
                if *v < -clamp {
                    return Err(Error::InvalidInput(format!("negative weight {v:e}")));
                }
                *v = 0.0;
            }
        }
        let total = values.iter().sum();
        Ok(Self { values, total })
    }

    /// For values already known to be non-negative and finite.
    pub(crate) fn from_nonnegative(values: Vec<f64>) -> Self {
        debug_assert!(values.iter().all(|v| *v >= 0.0 && v.is_finite()));
        let total = values.iter().sum();
        Self { values, total }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Concatenation `self ⊕ other`.
    pub fn direct_sum(&self, other: &WeightVector) -> WeightVector {
        let mut v = self.values.clone();
        v.extend_from_slice(&other.values);
        WeightVector::from_nonnegative(v)
    }

    /// Copy sorted in non-increasing order.
    pub fn sorted_desc(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    fn ensure_normalized(&self) -> Result<()> {
        let tol = Tolerances::default().normalization;
        if (self.total - 1.0).abs() > tol {
            return Err(Error::InvalidInput(format!(
                "probability vector sums to {} (tolerance {tol:e})",
                self.total
            )));
        }
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for WeightVector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        WeightVector::new(v)
    }
}

impl TryFrom<&[f64]> for WeightVector {
    type Error = Error;
    fn try_from(v: &[f64]) -> Result<Self> {
        WeightVector::new(v.to_vec())
    }
}

/// Prefix-sum gaps `Σ_{i≤k} x↓_i − Σ_{i≤k} y↓_i` for every `k`, after
/// zero-padding to a common length. Positive entries mean `x ≺ y` fails there.
pub fn partial_sum_gaps(x: &WeightVector, y: &WeightVector) -> Vec<f64> {
    let len = x.len().max(y.len());
    let mut xs = x.sorted_desc();
    let mut ys = y.sorted_desc();
    xs.resize(len, 0.0);
    ys.resize(len, 0.0);
    let (mut sx, mut sy) = (0.0, 0.0);
    xs.iter()
        .zip(&ys)
        .map(|(a, b)| {
            sx += a;
            sy += b;
            sx - sy
        })
        .collect()
}

/// `x ≺ y`: every partial sum of `x↓` is at most the matching partial sum of
/// `y↓` plus `slack`. Totals must agree within `slack`.
pub fn is_majorized_by(x: &WeightVector, y: &WeightVector, slack: f64) -> Result<bool> {
    if (x.total() - y.total()).abs() > slack {
        return Err(Error::InvalidComparison {
            left: x.total(),
            right: y.total(),
        });
    }
    Ok(partial_sum_gaps(x, y).into_iter().all(|g| g <= slack))
}

#[inline]
fn neg_xlnx(x: f64) -> f64 {
    if x <= ZERO_CUTOFF {
        0.0
    } else {
        -x * x.ln()
    }
}

/// `Σ x_i^α` with `0^α := 0`, so that `α = 0` counts the support.
fn power_sum(values: &[f64], alpha: f64) -> f64 {
    values
        .iter()
        .filter(|&&x| x > ZERO_CUTOFF)
        .map(|&x| x.powf(alpha))
        .sum()
}

/// Shannon entropy `−Σ p_i ln p_i`.
pub fn shannon(p: &WeightVector) -> Result<f64> {
    p.ensure_normalized()?;
    Ok(tilde_entropy(p))
}

/// `x ↦ −Σ x_i ln x_i` on an arbitrary non-negative vector (no normalization
/// required). Schur-concave.
pub fn tilde_entropy(x: &WeightVector) -> f64 {
    x.values().iter().map(|&v| neg_xlnx(v)).sum()
}

fn check_order(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::UnsupportedOrder(alpha));
    }
    Ok(())
}

/// Rényi entropy `ln(Σ p_i^α) / (1 − α)`; `α = 1` gives the Shannon entropy.
pub fn renyi(p: &WeightVector, alpha: f64) -> Result<f64> {
    check_order(alpha)?;
    p.ensure_normalized()?;
    if alpha == 1.0 {
        return Ok(tilde_entropy(p));
    }
    Ok(power_sum(p.values(), alpha).ln() / (1.0 - alpha))
}

/// Tsallis entropy `(Σ p_i^α − 1) / (1 − α)`; `α = 1` gives the Shannon entropy.
pub fn tsallis(p: &WeightVector, alpha: f64) -> Result<f64> {
    check_order(alpha)?;
    p.ensure_normalized()?;
    if alpha == 1.0 {
        return Ok(tilde_entropy(p));
    }
    Ok((power_sum(p.values(), alpha) - 1.0) / (1.0 - alpha))
}

/// A joint distribution of two discrete variables with its marginals.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution {
    matrix: DMatrix<f64>,
    row_marginal: WeightVector,
    col_marginal: WeightVector,
}

impl JointDistribution {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if matrix.nrows() == 0 || matrix.ncols() == 0 {
            return Err(Error::InvalidInput("empty joint distribution".into()));
        }
        let clamp = Tolerances::default().negative_clamp;
        let mut matrix = matrix;
        for v in matrix.iter_mut() {
            if !v.is_finite() || *v < -clamp {
                return Err(Error::InvalidInput(format!(
                    "invalid joint probability {v}"
                )));
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let total: f64 = matrix.iter().sum();
        if (total - 1.0).abs() > Tolerances::default().normalization {
            return Err(Error::InvalidInput(format!(
                "joint distribution sums to {total}"
            )));
        }
        let rows = matrix.row_iter().map(|r| r.sum()).collect();
        let cols = matrix.column_iter().map(|c| c.sum()).collect();
        Ok(Self {
            row_marginal: WeightVector::from_nonnegative(rows),
            col_marginal: WeightVector::from_nonnegative(cols),
            matrix,
        })
    }

    /// Product distribution `r ⊗ c`.
    pub fn product(rows: &WeightVector, cols: &WeightVector) -> Result<Self> {
        Self::new(DMatrix::from_fn(rows.len(), cols.len(), |i, j| {
            rows.values()[i] * cols.values()[j]
        }))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn row_marginal(&self) -> &WeightVector {
        &self.row_marginal
    }

    pub fn col_marginal(&self) -> &WeightVector {
        &self.col_marginal
    }

    /// All entries, column-major.
    pub fn entries(&self) -> WeightVector {
        WeightVector::from_nonnegative(self.matrix.iter().copied().collect())
    }

    /// Entropy of the joint distribution.
    pub fn entropy(&self) -> f64 {
        self.matrix.iter().map(|&v| neg_xlnx(v)).sum()
    }
}

/// `I(P) = H(rows) + H(cols) − H(P)`, clamped at zero.
pub fn mutual_information(p: &JointDistribution) -> f64 {
    let mi = tilde_entropy(p.row_marginal()) + tilde_entropy(p.col_marginal()) - p.entropy();
    mi.max(0.0)
}
