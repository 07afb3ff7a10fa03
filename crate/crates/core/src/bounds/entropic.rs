use crate::error::{Error, Result};
use crate::majorize::{mutual_information, tilde_entropy, ZERO_CUTOFF};
use crate::states::Spectrum;

use super::{joint_distribution, MajorantVector, SubCoefficients};

fn power_sum(w: &MajorantVector, alpha: f64) -> f64 {
    w.values()
        .iter()
        .filter(|&&x| x > ZERO_CUTOFF)
        .map(|&x| x.powf(alpha))
        .sum()
}

/// Lower bound on `H(p) + H(q)`: `−Σ w_i ln w_i`.
pub fn shannon_bound(w: &MajorantVector) -> f64 {
    tilde_entropy(w.weights())
}

/// Lower bound on `H_α(p) + H_α(q)` for `0 ≤ α < 1`:
/// `ln(Σ w_i^α − 1) / (1 − α)`.
pub fn renyi_bound(w: &MajorantVector, alpha: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::UnsupportedOrder(alpha));
    }
    Ok((power_sum(w, alpha) - 1.0).ln() / (1.0 - alpha))
}

/// Lower bound on `T_α(p) + T_α(q)` for `α ≥ 0`: `(Σ w_i^α − 2) / (1 − α)`,
/// and the Shannon bound at `α = 1`.
pub fn tsallis_bound(w: &MajorantVector, alpha: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::UnsupportedOrder(alpha));
    }
    if alpha == 1.0 {
        return Ok(shannon_bound(w));
    }
    Ok((power_sum(w, alpha) - 2.0) / (1.0 - alpha))
}

/// Lower bound on `H(X|B) + H(Y|B)` for a bipartite pure state with Schmidt
/// vector `λ`, measured on subsystem `A`: twice the mutual information of
/// `P = ½ Λ diag(W)`. Equal to `−Σ W^(λ) ln W^(λ) − 2H(λ)` and never negative.
pub fn conditional_bound(lambda: &Spectrum, s: &SubCoefficients) -> f64 {
    2.0 * mutual_information(&joint_distribution(lambda, s))
}
