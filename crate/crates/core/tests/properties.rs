//! Property tests for invariants that hold for every input.

use majorant::bounds::{conditional_bound, shannon_bound, sub_coefficients, w_lambda};
use majorant::linalg::{haar_unitary, singular_values, submatrix, ComplexMatrix};
use majorant::majorize::{
    is_majorized_by, mutual_information, renyi, shannon, tilde_entropy, tsallis, WeightVector,
};
use majorant::oracle::{verify_lemma, VerificationReport};
use majorant::states::{
    measurement_probs, random_density_with_spectrum, BipartitePureState, Spectrum,
};
use majorant::{bounds, linalg::C64};
use proptest::prelude::*;

fn prob_vector(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, 2..=max_len).prop_filter_map("non-zero", |v| {
        let total: f64 = v.iter().sum();
        (total > 1e-3).then(|| v.iter().map(|x| x / total).collect())
    })
}

fn spectrum(max_len: usize) -> impl Strategy<Value = Spectrum> {
    prob_vector(max_len).prop_map(|v| Spectrum::new(v).unwrap())
}

/// `t y_i + (1 − t) y_j` on two entries: a T-transform, so the result is
/// majorized by `y`.
fn t_transform(y: &[f64], i: usize, j: usize, t: f64) -> Vec<f64> {
    let mut x = y.to_vec();
    x[i] = t * y[i] + (1.0 - t) * y[j];
    x[j] = (1.0 - t) * y[i] + t * y[j];
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn entropies_are_schur_concave(y in prob_vector(6), i in 0usize..6, j in 0usize..6, t in 0.0f64..1.0) {
        let (i, j) = (i % y.len(), j % y.len());
        let x = t_transform(&y, i, j, t);
        let (xw, yw) = (WeightVector::new(x).unwrap(), WeightVector::new(y).unwrap());
        prop_assert!(is_majorized_by(&xw, &yw, 1e-12).unwrap());
        prop_assert!(shannon(&xw).unwrap() >= shannon(&yw).unwrap() - 1e-12);
        for alpha in [0.3, 0.7, 2.0, 5.0] {
            prop_assert!(renyi(&xw, alpha).unwrap() >= renyi(&yw, alpha).unwrap() - 1e-12);
            prop_assert!(tsallis(&xw, alpha).unwrap() >= tsallis(&yw, alpha).unwrap() - 1e-12);
        }
    }

    #[test]
    fn renyi_is_non_increasing_in_order(p in prob_vector(6)) {
        let p = WeightVector::new(p).unwrap();
        let orders = [0.0, 0.2, 0.5, 0.9, 1.0, 1.5, 3.0, 10.0];
        for w in orders.windows(2) {
            prop_assert!(renyi(&p, w[1]).unwrap() <= renyi(&p, w[0]).unwrap() + 1e-12);
        }
    }

    #[test]
    fn haar_unitaries_are_unitary_with_unit_singular_values(n in 1usize..7, seed in any::<u64>()) {
        let u = haar_unitary(n, seed).unwrap();
        prop_assert!(u.unitarity_defect() < 1e-12);
        for sv in singular_values(&u).unwrap() {
            prop_assert!((sv - 1.0).abs() < 1e-12);
        }
        let block = submatrix(&u, &[0], &(0..n).collect::<Vec<_>>()).unwrap();
        prop_assert!((singular_values(&block).unwrap()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singular_values_survive_adjoint(rows in 1usize..5, cols in 1usize..5, seed in any::<u64>()) {
        let u = haar_unitary(rows.max(cols), seed).unwrap();
        let m = submatrix(&u, &(0..rows).collect::<Vec<_>>(), &(0..cols).collect::<Vec<_>>()).unwrap();
        let a = singular_values(&m).unwrap();
        let b = singular_values(&m.adjoint()).unwrap();
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-12);
            prop_assert!(*x <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn diagonal_is_majorized_by_spectrum(lambda in spectrum(6), seed in any::<u64>()) {
        let rho = random_density_with_spectrum(&lambda, seed);
        let p = measurement_probs(&rho, None).unwrap();
        let mut l = lambda.values().to_vec();
        l.resize(p.len(), 0.0);
        prop_assert!(is_majorized_by(&p, &WeightVector::new(l).unwrap(), 1e-10).unwrap());
    }

    #[test]
    fn coefficients_are_monotone_and_w_is_a_distribution(n in 1usize..6, seed in any::<u64>()) {
        let u = haar_unitary(n, seed).unwrap();
        let s = sub_coefficients(&u).unwrap();
        prop_assert_eq!(s.values()[n - 1], 1.0);
        prop_assert!(s.values().windows(2).all(|w| w[0] <= w[1]));
        prop_assert!((s.c() - u.max_modulus()).abs() < 1e-12);
        prop_assert!((s.w_vector().total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn majorant_sums_to_two_and_majorizes(n in 2usize..6, seed in any::<u64>(), lambda_seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(lambda_seed);
        let lambda = Spectrum::random(n, &mut rng).unwrap();
        let u = haar_unitary(n, seed).unwrap();
        let s = sub_coefficients(&u).unwrap();
        let w = w_lambda(&s, &lambda);
        prop_assert!((w.weights().total() - 2.0).abs() < 1e-12);
        let rho = random_density_with_spectrum(&lambda, seed ^ 0x5555);
        let pq = measurement_probs(&rho, None).unwrap().direct_sum(&measurement_probs(&rho, Some(&u)).unwrap());
        prop_assert!(is_majorized_by(&pq, w.weights(), 1e-9).unwrap());
        // mixing can only lower the partial-sum bounds
        let mixed = bounds::capital_s(&s, &lambda);
        let pure = bounds::capital_s(&s, &Spectrum::pure(n).unwrap());
        for (a, b) in mixed.iter().zip(&pure) {
            prop_assert!(*a <= b + 1e-12);
        }
    }

    #[test]
    fn conditional_bound_is_non_negative_and_below_pure_value(n in 2usize..6, seed in any::<u64>(), lambda in spectrum(5)) {
        let u = haar_unitary(n, seed).unwrap();
        let s = sub_coefficients(&u).unwrap();
        let lambda = Spectrum::new(lambda.padded(n)).unwrap_or_else(|_| Spectrum::pure(n).unwrap());
        let b = conditional_bound(&lambda, &s);
        prop_assert!(b >= 0.0);
        prop_assert!(mutual_information(&bounds::joint_distribution(&lambda, &s)) >= 0.0);
        prop_assert!(b <= tilde_entropy(&s.w_vector()) + 1e-9);
    }

    #[test]
    fn report_merge_is_associative(a in 0u64..3, b in 3u64..6, c in 6u64..9) {
        let r = |seed| verify_lemma(2, 3, seed).unwrap();
        let (x, y, z): (VerificationReport, VerificationReport, VerificationReport) = (r(a), r(b), r(c));
        let left = x.clone().merge(y.clone()).merge(z.clone());
        let right = x.merge(y.merge(z));
        prop_assert_eq!(left, right);
    }
}

/// `H(X|B) + H(Y|B)` built from a bipartite pure state: a rank-one measurement
/// of `A` leaves `B` in a pure state for every outcome, so `H(XB) = H(p)` and
/// `H(X|B) = H(p) − H(B)`, with `H(B)` from the Schmidt coefficients.
fn conditional_entropy_sum(amplitudes: &ComplexMatrix, u: &ComplexMatrix) -> f64 {
    let (da, db) = (amplitudes.rows(), amplitudes.cols());
    let outcome_probs = |basis: &ComplexMatrix| -> WeightVector {
        let probs = (0..da)
            .map(|x| {
                (0..db)
                    .map(|j| {
                        let v: C64 = (0..da)
                            .map(|i| basis.get(i, x).conj() * amplitudes.get(i, j))
                            .sum();
                        v.norm_sqr()
                    })
                    .sum()
            })
            .collect();
        WeightVector::new(probs).unwrap()
    };
    let h_b = BipartitePureState::new(amplitudes.clone())
        .unwrap()
        .schmidt()
        .entropy();
    let p = outcome_probs(&ComplexMatrix::identity(da));
    let q = outcome_probs(u);
    shannon(&p).unwrap() + shannon(&q).unwrap() - 2.0 * h_b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn conditional_bound_holds_for_constructed_bipartite_states(
        da in 2usize..4,
        db in 2usize..4,
        re in prop::collection::vec(-1.0f64..1.0, 9),
        im in prop::collection::vec(-1.0f64..1.0, 9),
        seed in any::<u64>(),
    ) {
        let mut entries: Vec<C64> = (0..da * db).map(|k| C64::new(re[k], im[k])).collect();
        let norm: f64 = entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-3);
        entries.iter_mut().for_each(|z| *z /= norm);
        let amplitudes = ComplexMatrix::new(da, db, entries).unwrap();
        let state = BipartitePureState::new(amplitudes.clone()).unwrap();
        let lambda = Spectrum::new(state.schmidt().padded(da)).unwrap();
        let reduced = state.reduced_a().spectrum();
        for (a, b) in lambda.values().iter().zip(reduced.values()) {
            prop_assert!((a - b).abs() < 1e-10);
        }
        let u = haar_unitary(da, seed).unwrap();
        let s = sub_coefficients(&u).unwrap();
        let lhs = conditional_entropy_sum(&amplitudes, &u);
        prop_assert!(lhs >= conditional_bound(&lambda, &s) - 1e-9);
        // the Shannon bound on H(p) + H(q) shifted by 2H(λ) is the same number
        let shifted = shannon_bound(&w_lambda(&s, &lambda)) - 2.0 * lambda.entropy();
        prop_assert!((shifted.max(0.0) - conditional_bound(&lambda, &s)).abs() < 1e-9);
    }
}
