//! Spectra, density matrices, measurement distributions and bipartite pure
//! states.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix, C64};
use crate::majorize::WeightVector;
use crate::Tolerances;

/// Eigenvalues of a state (or Schmidt coefficients of a bipartite pure
/// state), stored in non-increasing order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Clamps entries in `[-1e-12, 0)` to zero, requires a unit total within
    /// `1e-9` and sorts descending (stable for ties).
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::build(values, false)
    }

    /// Like [`Spectrum::new`] but rescales inputs whose total lies within
    /// `1e-6` of one, e.g. rounded values read from a file.
    pub fn new_renormalized(values: Vec<f64>) -> Result<Self> {
        Self::build(values, true)
    }

    fn build(mut values: Vec<f64>, renormalize: bool) -> Result<Self> {
        let tol = Tolerances::default();
        if values.is_empty() {
            return Err(Error::InvalidInput("empty spectrum".into()));
        }
        for v in values.iter_mut() {
            if !v.is_finite() || *v < -tol.negative_clamp {
                return Err(Error::InvalidInput(format!("invalid eigenvalue {v}")));
            }
            *v = v.max(0.0);
        }
        let total: f64 = values.iter().sum();
        let window = if renormalize {
            tol.renormalize_window
        } else {
            tol.normalization
        };
        if (total - 1.0).abs() > window {
            return Err(Error::InvalidInput(format!("spectrum sums to {total}")));
        }
        if renormalize {
            values.iter_mut().for_each(|v| *v /= total);
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values })
    }

    /// `(1, 0, …, 0)` of length `n`.
    pub fn pure(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("empty spectrum".into()));
        }
        let mut v = vec![0.0; n];
        v[0] = 1.0;
        Ok(Self { values: v })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("empty spectrum".into()));
        }
        Ok(Self {
            values: vec![1.0 / n as f64; n],
        })
    }

    /// Uniform draw from the probability simplex, sorted.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("empty spectrum".into()));
        }
        let mut v: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
        let total: f64 = v.iter().sum();
        v.iter_mut().for_each(|x| *x /= total);
        v.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values: v })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `λ_i` (zero-based), zero beyond the stored length.
    pub fn get(&self, i: usize) -> f64 {
        self.values.get(i).copied().unwrap_or(0.0)
    }

    /// Copy zero-padded (or truncated) to `len`.
    pub fn padded(&self, len: usize) -> Vec<f64> {
        (0..len).map(|i| self.get(i)).collect()
    }

    pub fn is_pure(&self) -> bool {
        self.values[0] == 1.0 && self.values[1..].iter().all(|&v| v == 0.0)
    }

    pub fn to_weights(&self) -> WeightVector {
        WeightVector::from_nonnegative(self.values.clone())
    }

    /// Von Neumann entropy of a state with this spectrum, in nats.
    pub fn entropy(&self) -> f64 {
        crate::majorize::tilde_entropy(&self.to_weights())
    }
}

/// Hermitian, positive semi-definite, unit-trace matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let tol = Tolerances::default();
        let eig = linalg::hermitian_eigenvalues_with(&matrix, tol.hermitian)?;
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > tol.normalization || trace.im.abs() > tol.normalization {
            return Err(Error::ContractViolation(format!("trace {trace} is not 1")));
        }
        if let Some(&min) = eig.last() {
            if min < -tol.psd {
                return Err(Error::ContractViolation(format!(
                    "negative eigenvalue {min:e}"
                )));
            }
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.matrix).expect("validated Hermitian")
    }

    /// Eigenvalues clamped at zero and renormalized.
    pub fn spectrum(&self) -> Spectrum {
        let v: Vec<f64> = self.eigenvalues().into_iter().map(|x| x.max(0.0)).collect();
        let total: f64 = v.iter().sum();
        Spectrum {
            values: v.into_iter().map(|x| x / total).collect(),
        }
    }
}

/// `V diag(λ) V†` with `V` Haar-distributed, deterministic in `seed`.
pub fn random_density_with_spectrum(lambda: &Spectrum, seed: u64) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_density_with_rng(lambda, &mut rng)
}

pub fn random_density_with_rng<R: Rng + ?Sized>(lambda: &Spectrum, rng: &mut R) -> DensityMatrix {
    let n = lambda.len();
    let v = linalg::haar_unitary_with_rng(n, rng)
        .expect("n >= 1")
        .into_dmatrix();
    let mut rho = DMatrix::<C64>::zeros(n, n);
    for (k, &l) in lambda.values().iter().enumerate() {
        if l == 0.0 {
            continue;
        }
        let col = v.column(k);
        rho += (col * col.adjoint()) * C64::new(l, 0.0);
    }
    DensityMatrix {
        matrix: ComplexMatrix::wrap(hermitian_part(rho)),
    }
}

/// Builds a density matrix directly from its eigen-decomposition, without
/// re-validating it.
pub(crate) fn density_from_eigen(values: &[f64], vectors: &ComplexMatrix) -> DensityMatrix {
    let v = vectors.as_dmatrix();
    let n = v.nrows();
    let mut rho = DMatrix::<C64>::zeros(n, n);
    for (k, &l) in values.iter().enumerate().take(v.ncols()) {
        let col = v.column(k);
        rho += (col * col.adjoint()) * C64::new(l, 0.0);
    }
    DensityMatrix {
        matrix: ComplexMatrix::wrap(hermitian_part(rho)),
    }
}

fn hermitian_part(m: DMatrix<C64>) -> DMatrix<C64> {
    (&m + m.adjoint()) * C64::new(0.5, 0.0)
}

/// Outcome distribution of a measurement in the basis formed by the columns
/// of `u`; `None` measures in the computational basis. Entry `i` is
/// `(U†ρU)_ii`.
pub fn measurement_probs(rho: &DensityMatrix, u: Option<&ComplexMatrix>) -> Result<WeightVector> {
    let r = rho.matrix().as_dmatrix();
    let n = rho.dim();
    let probs: Vec<f64> = match u {
        None => (0..n).map(|i| r[(i, i)].re).collect(),
        Some(u) => {
            if u.rows() != n || u.cols() != n {
                return Err(Error::ContractViolation(format!(
                    "basis is {}x{}, state is {n}x{n}",
                    u.rows(),
                    u.cols()
                )));
            }
            u.ensure_unitary(Tolerances::default().unitary)?;
            let u = u.as_dmatrix();
            (0..n)
                .map(|i| {
                    let col = u.column(i);
                    (col.adjoint() * r * col)[(0, 0)].re
                })
                .collect()
        }
    };
    let clamped = probs
        .into_iter()
        .map(|p| if (-1e-12..0.0).contains(&p) { 0.0 } else { p })
        .collect();
    WeightVector::new(clamped)
}

/// A pure state of `H_A ⊗ H_B` given by its `d_A × d_B` coefficient matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartitePureState {
    amplitudes: ComplexMatrix,
    schmidt: Spectrum,
}

impl BipartitePureState {
    pub fn new(amplitudes: ComplexMatrix) -> Result<Self> {
        let schmidt = schmidt_vector(&amplitudes)?;
        Ok(Self {
            amplitudes,
            schmidt,
        })
    }

    /// `Σ_i √λ_i |i⟩|i⟩` in the product of two `d`-dimensional spaces.
    pub fn from_schmidt(schmidt: &Spectrum, dim_a: usize, dim_b: usize) -> Result<Self> {
        if schmidt.len() > dim_a.min(dim_b) {
            return Err(Error::InvalidInput(format!(
                "{} Schmidt coefficients do not fit in {dim_a}x{dim_b}",
                schmidt.len()
            )));
        }
        let m = DMatrix::from_fn(dim_a, dim_b, |i, j| {
            if i == j {
                C64::new(schmidt.get(i).sqrt(), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Self::new(ComplexMatrix::from_dmatrix(m)?)
    }

    pub fn amplitudes(&self) -> &ComplexMatrix {
        &self.amplitudes
    }

    pub fn schmidt(&self) -> &Spectrum {
        &self.schmidt
    }

    pub fn dim_a(&self) -> usize {
        self.amplitudes.rows()
    }

    pub fn dim_b(&self) -> usize {
        self.amplitudes.cols()
    }

    pub fn reduced_a(&self) -> DensityMatrix {
        partial_trace_a(&self.amplitudes).expect("validated on construction")
    }
}

fn check_normalized_amplitudes(amplitudes: &ComplexMatrix) -> Result<()> {
    let norm = amplitudes.frobenius_norm();
    if (norm - 1.0).abs() > Tolerances::default().normalization {
        return Err(Error::InvalidInput(format!(
            "state is not normalized: norm {norm}"
        )));
    }
    Ok(())
}

/// Squared singular values of the coefficient matrix, descending.
pub fn schmidt_vector(amplitudes: &ComplexMatrix) -> Result<Spectrum> {
    check_normalized_amplitudes(amplitudes)?;
    let sq: Vec<f64> = linalg::singular_values(amplitudes)?
        .into_iter()
        .map(|s| s * s)
        .collect();
    let total: f64 = sq.iter().sum();
    Spectrum::new(sq.into_iter().map(|x| x / total).collect())
}

/// Reduced state `ρ_A = Tr_B |ψ⟩⟨ψ| = Ψ Ψ†` for coefficient matrix `Ψ`.
pub fn partial_trace_a(amplitudes: &ComplexMatrix) -> Result<DensityMatrix> {
    check_normalized_amplitudes(amplitudes)?;
    let m = amplitudes.as_dmatrix();
    DensityMatrix::new(ComplexMatrix::wrap(hermitian_part(m * m.adjoint())))
}
