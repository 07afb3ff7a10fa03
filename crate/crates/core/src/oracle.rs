//! Brute-force verification of the majorization relation, the partial-sum
//! lemma and its exact trace-inequality maximum, the `Λ`/`P` identities, the
//! entropic bounds and a few qubit-specific relations.
//!
//! Every suite draws its randomness from a ChaCha stream keyed by
//! `(seed, trial)`, so results do not depend on how trials are scheduled.
//! Trials run on the rayon pool.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    self, capital_s, conditional_bound, joint_distribution, lambda_matrix, lemma_rhs,
    proposition_rhs, sub_coefficients, w_lambda, SubCoefficients,
};
use crate::error::{Error, Result};
use crate::linalg::{self, haar_unitary_with_rng, submatrix, ComplexMatrix, C64};
use crate::majorize::{self, partial_sum_gaps, tilde_entropy, WeightVector};
use crate::states::{self, measurement_probs, random_density_with_rng, DensityMatrix, Spectrum};
use crate::Tolerances;

/// Largest dimension the randomized suites accept.
pub const MAX_ORACLE_DIMENSION: usize = 6;

/// Outcome of one verification suite.
///
/// `worst_slack` is the largest observed `lhs − rhs` over all checked
/// inequalities (or `|lhs − rhs|` for identities); a trial is a violation when
/// it exceeds `tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub trials: u64,
    pub violations: u64,
    pub worst_slack: f64,
    pub tolerance: f64,
    pub seed: u64,
}

impl VerificationReport {
    fn empty(claim_id: &str, tolerance: f64, seed: u64) -> Self {
        Self {
            claim_id: claim_id.to_string(),
            trials: 0,
            violations: 0,
            worst_slack: f64::NEG_INFINITY,
            tolerance,
            seed,
        }
    }

    fn record(&mut self, excess: f64) {
        self.trials += 1;
        // NaN counts as a violation
        if excess.is_nan() || excess > self.tolerance {
            self.violations += 1;
        }
        self.worst_slack = self.worst_slack.max(excess);
    }

    /// Combines two reports for the same claim. Associative and commutative.
    pub fn merge(mut self, other: Self) -> Self {
        self.trials += other.trials;
        self.violations += other.violations;
        self.worst_slack = self.worst_slack.max(other.worst_slack);
        self
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn check_dimension(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArguments(format!("dimension {n} < 2")));
    }
    if n > MAX_ORACLE_DIMENSION {
        return Err(Error::ResourceLimit {
            n,
            max: MAX_ORACLE_DIMENSION,
        });
    }
    Ok(())
}

/// Runs `trial` for every index in parallel; each call returns the excesses
/// it observed, and the worst one decides the trial.
fn run_trials<F>(
    claim: &str,
    trials: u64,
    seed: u64,
    tolerance: f64,
    trial: F,
) -> VerificationReport
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let mut r = VerificationReport::empty(claim, tolerance, seed);
            r.record(trial(&mut rng));
            r
        })
        .reduce(
            || VerificationReport::empty(claim, tolerance, seed),
            VerificationReport::merge,
        )
}

/// A random non-empty subset of `0..n`, as sorted indices.
fn random_subset<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    loop {
        let mask: u32 = rng.random_range(1..(1u32 << n));
        let idx = mask_indices(mask, n);
        if !idx.is_empty() {
            return idx;
        }
    }
}

fn mask_indices(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask & (1 << i) != 0).collect()
}

/// Random non-decreasing coefficients in `[0, 1]` ending in one. Not tied to
/// any unitary; used for the purely algebraic identities.
pub fn random_sub_coefficients<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SubCoefficients {
    let mut s: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    s.sort_by(f64::total_cmp);
    s[n - 1] = 1.0;
    SubCoefficients::new(s).expect("sorted values in [0, 1]")
}

struct Sample {
    u: ComplexMatrix,
    s: SubCoefficients,
    lambda: Spectrum,
    p: WeightVector,
    q: WeightVector,
}

fn sample<R: Rng + ?Sized>(n: usize, fixed_u: Option<&ComplexMatrix>, rng: &mut R) -> Sample {
    let u = match fixed_u {
        Some(u) => u.clone(),
        None => haar_unitary_with_rng(n, rng).expect("n >= 1"),
    };
    let s = sub_coefficients(&u).expect("Haar samples are unitary");
    let lambda = Spectrum::random(n, rng).expect("n >= 1");
    let rho = random_density_with_rng(&lambda, rng);
    let p = measurement_probs(&rho, None).expect("valid state");
    let q = measurement_probs(&rho, Some(&u)).expect("unitary basis");
    Sample { u, s, lambda, p, q }
}

/// Largest partial-sum excess of `x↓` over `y↓`, skipping the final (total)
/// index, together with the mismatch of the totals.
fn majorization_excess(x: &WeightVector, y: &WeightVector) -> f64 {
    let gaps = partial_sum_gaps(x, y);
    let (last, head) = gaps.split_last().expect("non-empty");
    head.iter().copied().fold(last.abs(), f64::max)
}

/// `p ⊕ q ≺ W^(λ)` for random `(U, λ, ρ)`.
pub fn verify_majorization(n: usize, trials: u64, seed: u64) -> Result<VerificationReport> {
    verify_majorization_with(n, None, trials, seed, Tolerances::from_env().slack)
}

/// As [`verify_majorization`] with the unitary held fixed.
pub fn verify_majorization_fixed(
    u: &ComplexMatrix,
    trials: u64,
    seed: u64,
) -> Result<VerificationReport> {
    verify_majorization_with(
        u.rows(),
        Some(u),
        trials,
        seed,
        Tolerances::from_env().slack,
    )
}

pub fn verify_majorization_with(
    n: usize,
    fixed_u: Option<&ComplexMatrix>,
    trials: u64,
    seed: u64,
    tolerance: f64,
) -> Result<VerificationReport> {
    check_dimension(n)?;
    if let Some(u) = fixed_u {
        u.ensure_unitary(Tolerances::default().unitary)?;
    }
    Ok(run_trials("majorization", trials, seed, tolerance, |rng| {
        let smp = sample(n, fixed_u, rng);
        let w = w_lambda(&smp.s, &smp.lambda);
        majorization_excess(&smp.p.direct_sum(&smp.q), w.weights())
    }))
}

/// Exact maximum of `Σ_{i∈first} p_i + Σ_{j∈second} q_j` over states with
/// spectrum `λ`: `λ↓ · eig(M)↓` for `M = Σ |i⟩⟨i| + Σ |u_j⟩⟨u_j|`, where `u_j`
/// are the columns of `u`. One of the subsets may be empty.
pub fn exact_partial_sum_max(
    lambda: &Spectrum,
    first: &[usize],
    second: &[usize],
    u: &ComplexMatrix,
) -> Result<f64> {
    let m = projector_sum(first, second, u)?;
    let eig = linalg::hermitian_eigenvalues(&m)?;
    Ok(eig.iter().enumerate().map(|(i, e)| lambda.get(i) * e).sum())
}

/// A state with spectrum `λ` attaining [`exact_partial_sum_max`]: `λ` laid
/// out along the eigenvectors of `M` in matching order.
pub fn maximizing_state(
    lambda: &Spectrum,
    first: &[usize],
    second: &[usize],
    u: &ComplexMatrix,
) -> Result<DensityMatrix> {
    let m = projector_sum(first, second, u)?;
    let (_, vectors) = linalg::hermitian_eigen(&m)?;
    Ok(states::density_from_eigen(
        &lambda.padded(u.rows()),
        &vectors,
    ))
}

fn projector_sum(first: &[usize], second: &[usize], u: &ComplexMatrix) -> Result<ComplexMatrix> {
    if first.is_empty() && second.is_empty() {
        return Err(Error::InvalidArguments("both index sets are empty".into()));
    }
    if !u.is_square() {
        return Err(Error::InvalidArguments(
            "basis matrix must be square".into(),
        ));
    }
    let n = u.rows();
    if first.iter().chain(second).any(|&i| i >= n) {
        return Err(Error::InvalidInput(format!(
            "index out of range for dimension {n}"
        )));
    }
    let um = u.as_dmatrix();
    let mut m = DMatrix::<C64>::zeros(n, n);
    for &i in first {
        m[(i, i)] += C64::new(1.0, 0.0);
    }
    for &j in second {
        let col = um.column(j);
        m += col * col.adjoint();
    }
    ComplexMatrix::from_dmatrix((&m + m.adjoint()) * C64::new(0.5, 0.0))
}

/// The partial-sum lemma on random data: for random bases, subset sizes and
/// states, checks that
/// 1. `Σp + Σq ≤ λ↓·μ↓`,
/// 2. the eigenvalues of `M` equal `μ` (zero-padded), and
/// 3. `λ↓·μ↓` is dominated by the coefficient bound built from `s`.
pub fn verify_lemma(n: usize, trials: u64, seed: u64) -> Result<VerificationReport> {
    check_dimension(n)?;
    let tol = Tolerances::from_env().slack;
    Ok(run_trials("lemma", trials, seed, tol, |rng| {
        let smp = sample(n, None, rng);
        let first = random_subset(n, rng);
        let second = random_subset(n, rng);
        lemma_excess(&smp, &first, &second)
    }))
}

fn lemma_excess(smp: &Sample, first: &[usize], second: &[usize]) -> f64 {
    let (m, k) = (first.len(), second.len());
    let a = submatrix(&smp.u, first, second)
        .expect("valid subsets")
        .adjoint();
    let rhs = lemma_rhs(&smp.lambda, &a, m, k).expect("overlap of two bases");
    let lhs: f64 = first.iter().map(|&i| smp.p.values()[i]).sum::<f64>()
        + second.iter().map(|&j| smp.q.values()[j]).sum::<f64>();
    let mut excess = lhs - rhs;

    let mu = bounds::mu_vector(&a, m, k).expect("overlap of two bases");
    let eig = linalg::hermitian_eigenvalues(&projector_sum(first, second, &smp.u).expect("valid"))
        .expect("Hermitian");
    let len = eig.len().max(mu.len());
    for i in 0..len {
        let e = eig.get(i).copied().unwrap_or(0.0);
        let v = mu.values().get(i).copied().unwrap_or(0.0);
        excess = excess.max((e - v).abs());
    }

    let prop = proposition_rhs(&smp.lambda, &smp.s, m.max(k), m.min(k)).expect("sizes within N");
    excess.max(rhs - prop)
}

/// Walks every pair of index subsets for a fixed `(U, λ)` and checks
/// `exact_partial_sum_max ≤ proposition_rhs ≤ S_{m+n}`. For each `k` it also
/// checks that the balanced split (`m = n`, or `m = n + 1` for odd `k`)
/// maximizes the coefficient bound and reproduces `S_k`.
pub fn verify_tightness_ladder(u: &ComplexMatrix, lambda: &Spectrum) -> Result<VerificationReport> {
    verify_tightness_ladder_with(u, lambda, Tolerances::from_env().slack)
}

pub fn verify_tightness_ladder_with(
    u: &ComplexMatrix,
    lambda: &Spectrum,
    tolerance: f64,
) -> Result<VerificationReport> {
    let n = u.rows();
    if n > MAX_ORACLE_DIMENSION {
        return Err(Error::ResourceLimit {
            n,
            max: MAX_ORACLE_DIMENSION,
        });
    }
    if lambda.len() != n {
        return Err(Error::InvalidArguments(format!(
            "spectrum length {} does not match dimension {n}",
            lambda.len()
        )));
    }
    let s = sub_coefficients(u)?;
    let big_s = capital_s(&s, lambda);
    let mut report = VerificationReport::empty("ladder", tolerance, 0);

    let full = 1u32 << n;
    for fm in 0..full {
        for sm in 0..full {
            if fm == 0 && sm == 0 {
                continue;
            }
            let first = mask_indices(fm, n);
            let second = mask_indices(sm, n);
            let (a, b) = (first.len(), second.len());
            let exact = exact_partial_sum_max(lambda, &first, &second, u)?;
            let prop = proposition_rhs(lambda, &s, a.max(b), a.min(b))?;
            let sk = big_s[a + b - 1];
            report.record((exact - prop).max(prop - sk));
        }
    }

    for k in 1..=2 * n {
        let balanced = proposition_rhs(lambda, &s, k.div_ceil(2), k / 2)?;
        let mut excess = (balanced - big_s[k - 1]).abs();
        for small in 0..=k / 2 {
            let large = k - small;
            if large > n {
                continue;
            }
            excess = excess.max(proposition_rhs(lambda, &s, large, small)? - balanced);
        }
        report.record(excess);
    }
    Ok(report)
}

/// [`verify_tightness_ladder`] over random Haar `U` and random `λ`; each
/// trial counts once, with its worst excess.
pub fn verify_ladder_random(n: usize, trials: u64, seed: u64) -> Result<VerificationReport> {
    check_dimension(n)?;
    let tol = Tolerances::from_env().slack;
    Ok(run_trials("ladder", trials, seed, tol, |rng| {
        let u = haar_unitary_with_rng(n, rng).expect("n >= 1");
        let lambda = Spectrum::random(n, rng).expect("n >= 1");
        verify_tightness_ladder_with(&u, &lambda, tol)
            .expect("dimension checked")
            .worst_slack
    }))
}

fn multiset_excess(
    p: &crate::majorize::JointDistribution,
    lambda: &Spectrum,
    w: &WeightVector,
) -> f64 {
    let mut entries: Vec<f64> = p.matrix().iter().copied().collect();
    let mut tensor: Vec<f64> = Vec::with_capacity(entries.len());
    for _ in 0..2 {
        for &l in lambda.values() {
            for &x in w.values() {
                tensor.push(0.5 * l * x);
            }
        }
    }
    tensor.resize(entries.len(), 0.0);
    entries.sort_by(f64::total_cmp);
    tensor.sort_by(f64::total_cmp);
    entries
        .iter()
        .zip(&tensor)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// Identities around `P = ½ Λ diag(W)` for one `(λ, s)`:
/// `H(P) = H(λ) + H(W) + ln 2`, `−Σ W^(λ) ln W^(λ) = 2I(P) + 2H(λ)`,
/// `Λ W = W^(λ) = ΔS`, the marginals of `P`, and the tensor structure of its
/// entries. Uses tolerance `1e-9` for entropies, `1e-10` for vectors and
/// `1e-12` for the entry multiset; `worst_slack` is reported relative to each.
pub fn verify_identities(lambda: &Spectrum, s: &SubCoefficients) -> VerificationReport {
    let mut report = VerificationReport::empty("identities", 0.0, 0);
    report.record(identity_excess(lambda, s));
    report
}

/// Largest deviation from the identities, each scaled so that `0` means "at
/// its tolerance".
fn identity_excess(lambda: &Spectrum, s: &SubCoefficients) -> f64 {
    const ENTROPY_TOL: f64 = 1e-9;
    const VECTOR_TOL: f64 = 1e-10;
    const MULTISET_TOL: f64 = 1e-12;
    let n = s.dim();
    let lambda_n = Spectrum::new(lambda.padded(n)).expect("valid spectrum");
    let p = joint_distribution(&lambda_n, s);
    let w = s.w_vector();
    let wl = w_lambda(s, &lambda_n);
    let h_lambda = lambda_n.entropy();
    let h_w = tilde_entropy(&w);
    let mi = majorize::mutual_information(&p);

    let mut excess = f64::NEG_INFINITY;
    let mut note = |dev: f64, tol: f64| excess = excess.max(dev - tol);

    note(
        (p.entropy() - (h_lambda + h_w + std::f64::consts::LN_2)).abs(),
        ENTROPY_TOL,
    );
    note(
        (tilde_entropy(wl.weights()) - (2.0 * mi + 2.0 * h_lambda)).abs(),
        ENTROPY_TOL,
    );
    note(
        (conditional_bound(&lambda_n, s) - 2.0 * mi).abs(),
        ENTROPY_TOL,
    );

    let via_lambda = lambda_matrix(&lambda_n, n).apply(w.values());
    let big_s = capital_s(s, &lambda_n);
    for k in 0..2 * n {
        let diff = big_s[k] - if k == 0 { 0.0 } else { big_s[k - 1] };
        note((via_lambda[k] - wl.values()[k]).abs(), VECTOR_TOL);
        note((diff - wl.values()[k]).abs(), VECTOR_TOL);
        note(
            (p.row_marginal().values()[k] - 0.5 * wl.values()[k]).abs(),
            VECTOR_TOL,
        );
    }
    for j in 0..n {
        note(
            (p.col_marginal().values()[j] - w.values()[j]).abs(),
            VECTOR_TOL,
        );
    }
    note(multiset_excess(&p, &lambda_n, &w), MULTISET_TOL);
    excess
}

/// [`verify_identities`] over random `(λ, s)`: `s` alternates between
/// coefficients of a Haar unitary and arbitrary monotone coefficients.
pub fn verify_identities_random(n: usize, trials: u64, seed: u64) -> Result<VerificationReport> {
    check_dimension(n)?;
    Ok(run_trials("identities", trials, seed, 0.0, |rng| {
        let lambda = Spectrum::random(n, rng).expect("n >= 1");
        let s = if rng.random::<bool>() {
            sub_coefficients(&haar_unitary_with_rng(n, rng).expect("n >= 1")).expect("unitary")
        } else {
            random_sub_coefficients(n, rng)
        };
        identity_excess(&lambda, &s)
    }))
}

/// Rényi orders checked by [`verify_entropic_bounds`].
pub const RENYI_ORDERS: [f64; 3] = [0.1, 0.5, 0.9];
/// Tsallis orders checked by [`verify_entropic_bounds`].
pub const TSALLIS_ORDERS: [f64; 3] = [0.5, 2.0, 3.0];

/// Entropy sums of random `(p, q)` against the Shannon, Rényi and Tsallis
/// bounds built from `W^(λ)`.
pub fn verify_entropic_bounds(n: usize, trials: u64, seed: u64) -> Result<VerificationReport> {
    check_dimension(n)?;
    let tol = Tolerances::from_env().slack;
    Ok(run_trials("entropic", trials, seed, tol, |rng| {
        let smp = sample(n, None, rng);
        entropic_excess(&smp.p, &smp.q, &w_lambda(&smp.s, &smp.lambda))
    }))
}

pub(crate) fn entropic_excess(
    p: &WeightVector,
    q: &WeightVector,
    w: &bounds::MajorantVector,
) -> f64 {
    let mut excess =
        bounds::shannon_bound(w) - (majorize::shannon(p).unwrap() + majorize::shannon(q).unwrap());
    for alpha in RENYI_ORDERS {
        let lhs = majorize::renyi(p, alpha).unwrap() + majorize::renyi(q, alpha).unwrap();
        excess = excess.max(bounds::renyi_bound(w, alpha).unwrap() - lhs);
    }
    for alpha in TSALLIS_ORDERS {
        let lhs = majorize::tsallis(p, alpha).unwrap() + majorize::tsallis(q, alpha).unwrap();
        excess = excess.max(bounds::tsallis_bound(w, alpha).unwrap() - lhs);
    }
    excess
}

/// Midpoint convexity of the conditional bound in `λ` for a fixed unitary:
/// `B((λa + λb)/2) ≤ (B(λa) + B(λb))/2`.
pub fn verify_convexity(u: &ComplexMatrix, trials: u64, seed: u64) -> Result<VerificationReport> {
    let s = sub_coefficients(u)?;
    let n = u.rows();
    let tol = Tolerances::from_env().slack;
    Ok(run_trials("convexity", trials, seed, tol, |rng| {
        let a = Spectrum::random(n, rng).expect("n >= 1");
        let b = Spectrum::random(n, rng).expect("n >= 1");
        let mid: Vec<f64> = a
            .values()
            .iter()
            .zip(b.values())
            .map(|(x, y)| 0.5 * (x + y))
            .collect();
        let mid = Spectrum::new(mid).expect("average of sorted spectra");
        conditional_bound(&mid, &s) - 0.5 * (conditional_bound(&a, &s) + conditional_bound(&b, &s))
    }))
}

/// Qubit relations: `s_1 ≥ 1/√2` for Haar `U`, and `W^(λ) ≺ W ⊕ λ`.
pub fn verify_qubit_extras(trials: u64, seed: u64) -> VerificationReport {
    let tol = Tolerances::from_env().slack;
    run_trials("qubit", trials, seed, tol, |rng| {
        let u = haar_unitary_with_rng(2, rng).expect("n = 2");
        let s = sub_coefficients(&u).expect("unitary");
        let lambda = Spectrum::random(2, rng).expect("n = 2");
        let wl = w_lambda(&s, &lambda);
        let coarse = s.w_vector().direct_sum(&lambda.to_weights());
        majorization_excess(wl.weights(), &coarse).max(std::f64::consts::FRAC_1_SQRT_2 - s.c())
    })
}
