//! # majorant
//!
//! Majorization uncertainty bounds for two orthogonal (von Neumann)
//! measurements performed on a mixed state of a finite-dimensional system.
//!
//! Given a unitary `U` relating the two measurement bases and the spectrum
//! `λ` of the measured state, the crate builds a vector `W^(λ)` of length
//! `2N` that majorizes the direct sum `p ⊕ q` of the two outcome
//! distributions. Schur-concave functionals of `W^(λ)` then give lower
//! bounds on entropy sums (Shannon, Rényi for `α < 1`, Tsallis for `α ≥ 0`)
//! and, for a bipartite pure state measured on one side, on the sum of
//! conditional entropies `H(X|B) + H(Y|B)`.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`linalg`] | dense complex matrices, singular values, Hermitian eigenvalues, Haar sampling |
//! | [`states`] | spectra, density matrices, measurement distributions, Schmidt vectors |
//! | [`majorize`] | majorization predicate, Shannon/Rényi/Tsallis entropies, mutual information |
//! | [`bounds`] | `s_k` coefficients, `W`, `W^(λ)`, the `Λ` matrix, entropic and conditional bounds |
//! | [`oracle`] | brute-force verification suites |
//! | [`cli`] | command implementations behind the `majorant` binary |
//!
//! ```
//! use majorant::{bounds, linalg::named, states::Spectrum};
//!
//! let s = bounds::sub_coefficients(&named::hadamard2()).unwrap();
//! let lambda = Spectrum::new(vec![0.9, 0.1]).unwrap();
//! let w = bounds::w_lambda(&s, &lambda);
//! let h = bounds::shannon_bound(&w);
//! assert!(h > 0.0);
//! ```
//!
//! All entropies are in nats.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod majorize;
pub mod oracle;
pub mod states;

pub use error::{Error, Result};

/// Environment variable that overrides the default verification slack.
pub const TOLERANCE_ENV: &str = "MAJORANT_TOLERANCE";

/// Numerical tolerances. The defaults are the ones every check in the crate
/// uses unless told otherwise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Max entrywise `|m - m†|` for a matrix to count as Hermitian.
    pub hermitian: f64,
    /// Max entrywise `|U†U - I|` for a matrix to count as unitary.
    pub unitary: f64,
    /// Allowed deviation of a probability total from 1.
    pub normalization: f64,
    /// Negative entries down to `-negative_clamp` are clamped to zero.
    pub negative_clamp: f64,
    /// Most negative eigenvalue accepted in a density matrix.
    pub psd: f64,
    /// Additive slack on partial sums and inequality checks.
    pub slack: f64,
    /// Window in which a spectrum may be renormalized on request.
    pub renormalize_window: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-10,
            unitary: 1e-10,
            normalization: 1e-9,
            negative_clamp: 1e-12,
            psd: 1e-9,
            slack: 1e-9,
            renormalize_window: 1e-6,
        }
    }
}

impl Tolerances {
    /// Defaults, with `slack` taken from [`TOLERANCE_ENV`] when it is set to a
    /// positive number.
    pub fn from_env() -> Self {
        let mut tol = Self::default();
        if let Some(v) = std::env::var(TOLERANCE_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|v| v.is_finite() && *v > 0.0)
        {
            tol.slack = v;
        }
        tol
    }
}
