//! The exact maximum of a partial sum of outcome probabilities, the state that
//! attains it, and the two coefficient bounds above it.

use majorant::bounds::{capital_s, lemma_rhs, proposition_rhs, sub_coefficients};
use majorant::linalg::{haar_unitary, submatrix};
use majorant::oracle::{exact_partial_sum_max, maximizing_state, verify_tightness_ladder};
use majorant::states::{measurement_probs, Spectrum};

fn main() {
    let u = haar_unitary(4, 3).unwrap();
    let s = sub_coefficients(&u).unwrap();
    let lambda = Spectrum::new(vec![0.55, 0.25, 0.15, 0.05]).unwrap();
    let (first, second) = (vec![0, 3], vec![1]);

    let exact = exact_partial_sum_max(&lambda, &first, &second, &u).unwrap();
    let rho = maximizing_state(&lambda, &first, &second, &u).unwrap();
    let p = measurement_probs(&rho, None).unwrap();
    let q = measurement_probs(&rho, Some(&u)).unwrap();
    let attained = p.values()[0] + p.values()[3] + q.values()[1];

    let a = submatrix(&u, &first, &second).unwrap().adjoint();
    let lemma = lemma_rhs(&lambda, &a, 2, 1).unwrap();
    let prop = proposition_rhs(&lambda, &s, 2, 1).unwrap();
    let big_s = capital_s(&s, &lambda)[2];

    println!("exact max   {exact:.10}  (attained {attained:.10})");
    println!("lemma       {lemma:.10}");
    println!("coefficient {prop:.10}");
    println!("S_3         {big_s:.10}");

    let r = verify_tightness_ladder(&u, &lambda).unwrap();
    println!(
        "all subset pairs: checks={} violations={}",
        r.trials, r.violations
    );
}
