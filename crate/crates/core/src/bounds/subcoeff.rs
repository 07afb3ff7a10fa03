//! Exhaustive maxima of submatrix operator norms over fixed-perimeter classes.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::majorize::WeightVector;
use crate::Tolerances;

/// Largest dimension accepted by [`sub_coefficients`] by default.
pub const DEFAULT_MAX_DIMENSION: usize = 10;

/// Dimension from which the enumeration fans out over row subsets.
const PARALLEL_FROM: usize = 7;

/// `s_1 ≤ s_2 ≤ … ≤ s_N = 1`, where `s_k` is the largest operator norm of a
/// submatrix of `U` whose row and column counts add up to `k + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubCoefficients {
    s: Vec<f64>,
}

impl SubCoefficients {
    /// Validates a user-supplied coefficient vector (`s_1, …, s_N`).
    pub fn new(s: Vec<f64>) -> Result<Self> {
        let tol = Tolerances::default().normalization;
        if s.is_empty() {
            return Err(Error::InvalidInput("empty coefficient vector".into()));
        }
        if s.iter()
            .any(|v| !v.is_finite() || *v < 0.0 || *v > 1.0 + tol)
        {
            return Err(Error::InvalidInput(
                "coefficients must lie in [0, 1]".into(),
            ));
        }
        if s.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidInput(
                "coefficients must be non-decreasing".into(),
            ));
        }
        let last = *s.last().expect("non-empty");
        if (last - 1.0).abs() > tol {
            return Err(Error::InvalidInput(format!("s_N = {last}, expected 1")));
        }
        Ok(Self::normalized(s))
    }

    /// Snaps to the exact constraints: values in `[0, 1]`, non-decreasing,
    /// last entry exactly one.
    fn normalized(mut s: Vec<f64>) -> Self {
        let mut running = 0.0f64;
        for v in s.iter_mut() {
            running = running.max(v.min(1.0));
            *v = running;
        }
        if let Some(last) = s.last_mut() {
            *last = 1.0;
        }
        Self { s }
    }

    /// Coefficients for a qubit with largest overlap modulus `c ∈ [1/√2, 1]`.
    pub fn qubit(c: f64) -> Result<Self> {
        Self::new(vec![c, 1.0])
    }

    pub fn dim(&self) -> usize {
        self.s.len()
    }

    /// `(s_1, …, s_N)`.
    pub fn values(&self) -> &[f64] {
        &self.s
    }

    /// `s_k` with `s_0 = 0` and `s_k = 1` for `k ≥ N`.
    pub fn get(&self, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else if k >= self.s.len() {
            1.0
        } else {
            self.s[k - 1]
        }
    }

    /// Largest entry modulus of the source unitary.
    pub fn c(&self) -> f64 {
        self.s[0]
    }

    /// `W = (s_1, s_2 − s_1, …, s_N − s_{N−1})`.
    pub fn w_vector(&self) -> WeightVector {
        let w = (1..=self.dim())
            .map(|k| self.get(k) - self.get(k - 1))
            .collect();
        WeightVector::from_nonnegative(w)
    }
}

/// `W` for the given coefficients.
pub fn w_vector(s: &SubCoefficients) -> WeightVector {
    s.w_vector()
}

/// Exhaustive `s_k` for `k = 1..N` with the default dimension cap.
pub fn sub_coefficients(u: &ComplexMatrix) -> Result<SubCoefficients> {
    sub_coefficients_with_limit(u, DEFAULT_MAX_DIMENSION)
}

pub fn sub_coefficients_with_limit(
    u: &ComplexMatrix,
    max_dimension: usize,
) -> Result<SubCoefficients> {
    if !u.is_square() {
        return Err(Error::ContractViolation(format!(
            "expected a square unitary, got {}x{}",
            u.rows(),
            u.cols()
        )));
    }
    let n = u.rows();
    if n > max_dimension {
        return Err(Error::ResourceLimit {
            n,
            max: max_dimension,
        });
    }
    u.ensure_unitary(Tolerances::default().unitary)?;
    let raw = perimeter_maxima(u.as_dmatrix(), n >= PARALLEL_FROM);
    let tol = Tolerances::default().normalization;
    if (raw[n - 1] - 1.0).abs() > tol {
        return Err(Error::ContractViolation(format!(
            "s_N evaluated to {}, expected 1",
            raw[n - 1]
        )));
    }
    Ok(SubCoefficients::normalized(raw))
}

/// For every `k = 1..N`, the largest norm among submatrices with
/// `rows + cols = k + 1`. Classes with `rows + cols > N + 1` are not needed.
fn perimeter_maxima(u: &DMatrix<C64>, parallel: bool) -> Vec<f64> {
    let n = u.nrows();
    let masks: Vec<u32> = (1u32..(1 << n)).collect();
    let per_row_mask = |&rmask: &u32| -> Vec<f64> {
        let mut best = vec![0.0f64; n];
        let rows = indices(rmask);
        let mut cols = Vec::with_capacity(n);
        for cmask in 1u32..(1 << n) {
            let k = rows.len() + cmask.count_ones() as usize - 1;
            if k > n {
                continue;
            }
            cols.clear();
            cols.extend(indices(cmask));
            let norm = block_norm(u, &rows, &cols);
            if norm > best[k - 1] {
                best[k - 1] = norm;
            }
        }
        best
    };
    let merge = |mut a: Vec<f64>, b: Vec<f64>| {
        for (x, y) in a.iter_mut().zip(b) {
            *x = x.max(y);
        }
        a
    };
    if parallel {
        masks
            .par_iter()
            .map(per_row_mask)
            .reduce(|| vec![0.0; n], merge)
    } else {
        masks.iter().map(per_row_mask).fold(vec![0.0; n], merge)
    }
}

fn indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// Operator norm of `u[rows, cols]`, from the Gram matrix of the shorter side.
fn block_norm(u: &DMatrix<C64>, rows: &[usize], cols: &[usize]) -> f64 {
    let (outer, inner, by_rows) = if rows.len() <= cols.len() {
        (rows, cols, true)
    } else {
        (cols, rows, false)
    };
    let entry = |a: usize, b: usize| if by_rows { u[(a, b)] } else { u[(b, a)] };
    let gram = |a: usize, b: usize| -> C64 {
        inner
            .iter()
            .map(|&j| entry(outer[a], j) * entry(outer[b], j).conj())
            .sum()
    };
    let top = match outer.len() {
        1 => gram(0, 0).re,
        2 => {
            let a = gram(0, 0).re;
            let d = gram(1, 1).re;
            let b = gram(0, 1).norm_sqr();
            let half = 0.5 * (a - d);
            0.5 * (a + d) + (half * half + b).sqrt()
        }
        m => {
            let g = DMatrix::from_fn(m, m, gram);
            g.symmetric_eigenvalues()
                .iter()
                .copied()
                .fold(f64::NEG_INFINITY, f64::max)
        }
    };
    top.max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{haar_unitary, named};
    use approx::assert_abs_diff_eq;

    #[test]
    fn identity_coefficients() {
        let s = sub_coefficients(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(s.values(), &[1.0, 1.0, 1.0]);
        assert_eq!(s.w_vector().values(), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn hadamard_coefficients() {
        let s = sub_coefficients(&named::hadamard2()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(s.get(1), h, epsilon = 1e-15);
        assert_eq!(s.get(2), 1.0);
        let w = s.w_vector();
        assert_abs_diff_eq!(w.values()[0], h, epsilon = 1e-15);
        assert_abs_diff_eq!(w.values()[1], 1.0 - h, epsilon = 1e-15);
    }

    #[test]
    fn o3_coefficients() {
        let s = sub_coefficients(&named::o3()).unwrap();
        let c = 2.0 / 6f64.sqrt();
        assert_abs_diff_eq!(s.get(1), c, epsilon = 1e-14);
        assert_abs_diff_eq!(s.get(2), 1.0, epsilon = 1e-14);
        assert_eq!(s.get(3), 1.0);
        let w = s.w_vector();
        assert_abs_diff_eq!(w.values()[0], 0.816_496_580_927_726, epsilon = 1e-12);
        assert_abs_diff_eq!(w.values()[1], 0.183_503_419_072_274, epsilon = 1e-12);
        assert_abs_diff_eq!(w.values()[2], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn index_conventions() {
        let s = SubCoefficients::new(vec![0.8, 0.9, 1.0]).unwrap();
        assert_eq!(s.get(0), 0.0);
        assert_eq!(s.get(3), 1.0);
        assert_eq!(s.get(17), 1.0);
        assert_eq!(s.c(), 0.8);
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert!(SubCoefficients::new(vec![0.9, 0.8, 1.0]).is_err());
        assert!(SubCoefficients::new(vec![0.9, 0.95]).is_err());
        let big = ComplexMatrix::identity(11);
        assert_eq!(
            sub_coefficients(&big).unwrap_err(),
            Error::ResourceLimit { n: 11, max: 10 }
        );
        let not_unitary = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        assert_eq!(
            sub_coefficients(&not_unitary).unwrap_err().code(),
            "contract_violation"
        );
    }

    #[test]
    fn first_coefficient_is_largest_modulus() {
        for seed in 0..20 {
            let u = haar_unitary(4, seed).unwrap();
            let s = sub_coefficients(&u).unwrap();
            assert_abs_diff_eq!(s.c(), u.max_modulus(), epsilon = 1e-12);
            assert!(s.values().windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn parallel_enumeration_is_bit_identical() {
        let u = haar_unitary(7, 3).unwrap();
        let par = perimeter_maxima(u.as_dmatrix(), true);
        let seq = perimeter_maxima(u.as_dmatrix(), false);
        assert_eq!(par, seq);
        let s = sub_coefficients(&u).unwrap();
        assert_eq!(s.get(7), 1.0);
        assert_abs_diff_eq!(s.c(), u.max_modulus(), epsilon = 1e-12);
    }
}
