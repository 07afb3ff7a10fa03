//! Dense complex linear algebra used throughout the crate.
//!
//! Everything here sits on top of [`nalgebra`]; the wrappers pin down the
//! ordering and tolerance conventions the rest of the crate relies on:
//! singular values and Hermitian eigenvalues always come back sorted in
//! descending order, and every check uses an explicit tolerance.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::Tolerances;

pub type C64 = Complex64;

/// A dense complex matrix with finite entries and non-zero shape.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput(format!("empty shape {rows}x{cols}")));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Self::from_dmatrix(DMatrix::from_row_slice(rows, cols, &entries))
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&x| C64::new(x, 0.0)).collect(),
        )
    }

    pub fn from_dmatrix(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() == 0 || m.ncols() == 0 {
            return Err(Error::InvalidInput("empty matrix".into()));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("matrix has non-finite entries".into()));
        }
        Ok(Self(m))
    }

    /// Wraps a matrix produced internally from finite data.
    pub(crate) fn wrap(m: DMatrix<C64>) -> Self {
        debug_assert!(m.nrows() > 0 && m.ncols() > 0);
        Self(m)
    }

    pub fn identity(n: usize) -> Self {
        Self::wrap(DMatrix::identity(n.max(1), n.max(1)))
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let n = values.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        Self::from_dmatrix(m)
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<C64> {
        self.0
    }

    /// Row-major copy of the entries.
    pub fn to_row_major(&self) -> Vec<C64> {
        (0..self.rows())
            .flat_map(|i| (0..self.cols()).map(move |j| (i, j)))
            .map(|(i, j)| self.0[(i, j)])
            .collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::wrap(self.0.adjoint())
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<Self> {
        if self.cols() != other.rows() {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        Ok(Self::wrap(&self.0 * &other.0))
    }

    pub fn trace(&self) -> C64 {
        self.0.diagonal().iter().sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_modulus(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |m - m†|` over entries; infinite for non-square input.
    pub fn hermitian_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `max |U†U - I|` over entries; infinite for non-square input.
    pub fn unitarity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let g = self.0.adjoint() * &self.0;
        let n = self.rows();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - C64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    /// Fails with a contract violation unless the matrix is unitary within `tol`.
    pub fn ensure_unitary(&self, tol: f64) -> Result<()> {
        let defect = self.unitarity_defect();
        if defect <= tol {
            Ok(())
        } else {
            Err(Error::ContractViolation(format!(
                "matrix is not unitary: max |U†U - I| = {defect:e} > {tol:e}"
            )))
        }
    }
}

/// Singular values in descending order.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if m.0.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    let mut sv: Vec<f64> = m.0.clone().singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// Largest singular value.
///
/// Works on the Gram matrix of the shorter side, with closed forms for one
/// and two dimensions. This is the inner loop of the submatrix enumeration.
pub fn operator_norm(m: &DMatrix<C64>) -> f64 {
    let (r, c) = (m.nrows(), m.ncols());
    if r == 1 || c == 1 {
        return m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    }
    let gram = if r <= c {
        m * m.adjoint()
    } else {
        m.adjoint() * m
    };
    let top = if gram.nrows() == 2 {
        let a = gram[(0, 0)].re;
        let d = gram[(1, 1)].re;
        let b = gram[(0, 1)].norm_sqr();
        let half = 0.5 * (a - d);
        0.5 * (a + d) + (half * half + b).sqrt()
    } else {
        gram.symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    };
    top.max(0.0).sqrt()
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eigenvalues_with(m, Tolerances::default().hermitian)
}

pub fn hermitian_eigenvalues_with(m: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    check_hermitian(m, tol)?;
    let sym = symmetrized(m);
    let mut ev: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    Ok(ev)
}

/// Eigen-decomposition of a Hermitian matrix: eigenvalues descending, with the
/// matching eigenvectors as the columns of the returned matrix.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    check_hermitian(m, Tolerances::default().hermitian)?;
    let eig = symmetrized(m).symmetric_eigen();
    let n = m.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, ComplexMatrix::wrap(vectors)))
}

fn check_hermitian(m: &ComplexMatrix, tol: f64) -> Result<()> {
    if !m.is_square() {
        return Err(Error::ContractViolation(format!(
            "expected a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let defect = m.hermitian_defect();
    if defect > tol {
        return Err(Error::ContractViolation(format!(
            "matrix is not Hermitian: max |m - m†| = {defect:e} > {tol:e}"
        )));
    }
    Ok(())
}

fn symmetrized(m: &ComplexMatrix) -> DMatrix<C64> {
    (&m.0 + m.0.adjoint()) * C64::new(0.5, 0.0)
}

/// Haar-distributed unitary of size `n`, deterministic in `seed`.
pub fn haar_unitary(n: usize, seed: u64) -> Result<ComplexMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_unitary_with_rng(n, &mut rng)
}

/// QR of a standard complex Ginibre matrix, with the phases of `R`'s diagonal
/// moved into `Q` so that the distribution is exactly Haar.
pub fn haar_unitary_with_rng<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidInput("unitary dimension must be >= 1".into()));
    }
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let ginibre = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * scale, im * scale)
    });
    let qr = ginibre.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    Ok(ComplexMatrix::wrap(q))
}

/// Copies the entries at the intersection of the given rows and columns.
///
/// Both index sets must be non-empty, strictly increasing and in range.
pub fn submatrix(m: &ComplexMatrix, rows: &[usize], cols: &[usize]) -> Result<ComplexMatrix> {
    check_index_set(rows, m.rows(), "row")?;
    check_index_set(cols, m.cols(), "column")?;
    Ok(ComplexMatrix::wrap(DMatrix::from_fn(
        rows.len(),
        cols.len(),
        |i, j| m.0[(rows[i], cols[j])],
    )))
}

fn check_index_set(idx: &[usize], bound: usize, what: &str) -> Result<()> {
    if idx.is_empty() {
        return Err(Error::InvalidInput(format!("empty {what} index set")));
    }
    if idx.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(format!(
            "{what} indices must be strictly increasing"
        )));
    }
    if let Some(&last) = idx.last() {
        if last >= bound {
            return Err(Error::InvalidInput(format!(
                "{what} index {last} out of range for dimension {bound}"
            )));
        }
    }
    Ok(())
}

/// Named unitaries used by examples and the command line.
pub mod named {
    use super::*;

    /// Discrete Fourier transform, `F_jk = ω^{jk} / √n`.
    pub fn fourier(n: usize) -> Result<ComplexMatrix> {
        if n == 0 {
            return Err(Error::InvalidInput("dimension must be >= 1".into()));
        }
        let norm = 1.0 / (n as f64).sqrt();
        let m = DMatrix::from_fn(n, n, |j, k| {
            let angle = 2.0 * std::f64::consts::PI * ((j * k) % n) as f64 / n as f64;
            C64::from_polar(norm, angle)
        });
        Ok(ComplexMatrix::wrap(m))
    }

    pub fn hadamard2() -> ComplexMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        ComplexMatrix::from_real(2, 2, &[h, h, h, -h]).expect("finite")
    }

    /// The real orthogonal qutrit matrix
    /// `(1/√6) [[√2, √2, √2], [√3, 0, -√3], [1, -2, 1]]`.
    pub fn o3() -> ComplexMatrix {
        let s6 = 6f64.sqrt();
        let a = 2f64.sqrt() / s6;
        let b = 3f64.sqrt() / s6;
        let c = 1.0 / s6;
        ComplexMatrix::from_real(3, 3, &[a, a, a, b, 0.0, -b, c, -2.0 * c, c]).expect("finite")
    }

    /// Planar rotation `((cos θ, sin θ), (−sin θ, cos θ))`.
    pub fn rotation(theta: f64) -> Result<ComplexMatrix> {
        let (s, c) = theta.sin_cos();
        ComplexMatrix::from_real(2, 2, &[c, s, -s, c])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn singular_values_of_simple_matrices() {
        let sv = singular_values(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(sv.len(), 3);
        for s in sv {
            assert_abs_diff_eq!(s, 1.0, epsilon = 1e-14);
        }

        let row = ComplexMatrix::new(1, 2, vec![C64::new(3.0, 0.0), C64::new(0.0, 4.0)]).unwrap();
        let sv = singular_values(&row).unwrap();
        assert_eq!(sv.len(), 1);
        assert_abs_diff_eq!(sv[0], 5.0, epsilon = 1e-13);

        let sv = singular_values(&named::hadamard2()).unwrap();
        assert_abs_diff_eq!(sv[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(sv[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn rejects_non_finite_entries() {
        let err = ComplexMatrix::new(1, 1, vec![C64::new(f64::NAN, 0.0)]).unwrap_err();
        assert_eq!(err.code(), "invalid_input");
        assert!(ComplexMatrix::new(0, 3, vec![]).is_err());
        assert!(ComplexMatrix::new(2, 2, vec![C64::new(1.0, 0.0)]).is_err());
    }

    #[test]
    fn operator_norm_matches_svd() {
        let u = haar_unitary(5, 3).unwrap();
        for (rows, cols) in [
            (vec![0, 2], vec![1, 3, 4]),
            (vec![1, 2, 3], vec![0, 4]),
            (vec![0, 1, 2], vec![1, 2, 3]),
        ] {
            let sub = submatrix(&u, &rows, &cols).unwrap();
            let fast = operator_norm(sub.as_dmatrix());
            let full = singular_values(&sub).unwrap()[0];
            assert_abs_diff_eq!(fast, full, epsilon = 1e-12);
        }
    }

    #[test]
    fn hermitian_eigenvalue_examples() {
        let d = ComplexMatrix::diagonal(&[0.3, 0.5, 0.2]).unwrap();
        let ev = hermitian_eigenvalues(&d).unwrap();
        assert_abs_diff_eq!(ev[0], 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(ev[1], 0.3, epsilon = 1e-14);
        assert_abs_diff_eq!(ev[2], 0.2, epsilon = 1e-14);

        let plus = ComplexMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).unwrap();
        let ev = hermitian_eigenvalues(&plus).unwrap();
        assert_abs_diff_eq!(ev[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ev[1], 0.0, epsilon = 1e-14);

        // |0><0| + |h1><h1| where h1 is the first Hadamard column.
        let m = ComplexMatrix::from_real(2, 2, &[1.5, 0.5, 0.5, 0.5]).unwrap();
        let ev = hermitian_eigenvalues(&m).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(ev[0], 1.0 + h, epsilon = 1e-13);
        assert_abs_diff_eq!(ev[1], 1.0 - h, epsilon = 1e-13);
    }

    #[test]
    fn hermitian_eigenvalues_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        assert_eq!(
            hermitian_eigenvalues(&m).unwrap_err().code(),
            "contract_violation"
        );
        let rect = ComplexMatrix::from_real(1, 2, &[1.0, 0.0]).unwrap();
        assert!(hermitian_eigenvalues(&rect).is_err());
    }

    #[test]
    fn haar_examples() {
        let u1 = haar_unitary(1, 9).unwrap();
        assert_abs_diff_eq!(u1.get(0, 0).norm(), 1.0, epsilon = 1e-14);

        let u4 = haar_unitary(4, 42).unwrap();
        assert!(u4.unitarity_defect() <= 1e-12);

        assert_eq!(haar_unitary(3, 5).unwrap(), haar_unitary(3, 5).unwrap());
        assert_ne!(haar_unitary(3, 5).unwrap(), haar_unitary(3, 6).unwrap());
        assert!(haar_unitary(0, 1).is_err());
    }

    #[test]
    fn eigenvectors_diagonalize() {
        let u = haar_unitary(3, 11).unwrap();
        let d = ComplexMatrix::diagonal(&[0.6, 0.3, 0.1]).unwrap();
        let rho = u.matmul(&d).unwrap().matmul(&u.adjoint()).unwrap();
        let (vals, vecs) = hermitian_eigen(&rho).unwrap();
        let back = vecs
            .matmul(&ComplexMatrix::diagonal(&vals).unwrap())
            .unwrap()
            .matmul(&vecs.adjoint())
            .unwrap();
        for (a, b) in back.to_row_major().iter().zip(rho.to_row_major()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn submatrix_examples() {
        let o3 = named::o3();
        assert_eq!(submatrix(&o3, &[0, 1, 2], &[0, 1, 2]).unwrap(), o3);

        let one = submatrix(&ComplexMatrix::identity(3), &[0], &[0]).unwrap();
        assert_eq!((one.rows(), one.cols()), (1, 1));
        assert_eq!(one.get(0, 0), C64::new(1.0, 0.0));

        let sub = submatrix(&o3, &[1], &[0, 2]).unwrap();
        let v = 3f64.sqrt() / 6f64.sqrt();
        assert_abs_diff_eq!(sub.get(0, 0).re, v, epsilon = 1e-15);
        assert_abs_diff_eq!(sub.get(0, 1).re, -v, epsilon = 1e-15);

        assert!(submatrix(&o3, &[], &[0]).is_err());
        assert!(submatrix(&o3, &[3], &[0]).is_err());
        assert!(submatrix(&o3, &[1, 0], &[0]).is_err());
    }

    #[test]
    fn named_unitaries_are_unitary() {
        let tol = 1e-12;
        assert!(named::hadamard2().is_unitary(tol));
        assert!(named::o3().is_unitary(tol));
        assert!(named::fourier(5).unwrap().is_unitary(tol));
        assert!(named::rotation(0.3).unwrap().is_unitary(tol));
    }
}
