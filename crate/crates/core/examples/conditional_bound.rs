//! Lower bound on `H(X|B) + H(Y|B)` for a two-qutrit pure state, next to the
//! comparison baselines, and the identities behind it.

use majorant::bounds::{
    comparison_bounds, conditional_bound, joint_distribution, sub_coefficients, w_lambda, Baseline,
};
use majorant::linalg::named;
use majorant::majorize::{mutual_information, tilde_entropy};
use majorant::states::{BipartitePureState, Spectrum};

fn main() {
    let s = sub_coefficients(&named::o3()).unwrap();
    let schmidt = Spectrum::new(vec![0.9, 0.07, 0.03]).unwrap();
    let psi = BipartitePureState::from_schmidt(&schmidt, 3, 3).unwrap();
    let lambda = psi.reduced_a().spectrum();

    let b = conditional_bound(&lambda, &s);
    println!("B_PRKZ      = {b:.6}");
    for v in comparison_bounds(&lambda, &s, &Baseline::ALL) {
        match v.value {
            Some(x) => println!("{:<11} = {x:.6}", v.label),
            None => println!("{:<11} = n/a ({})", v.label, v.note),
        }
    }

    let p = joint_distribution(&lambda, &s);
    let wl = w_lambda(&s, &lambda);
    println!(
        "2 I(P)                 = {:.12}",
        2.0 * mutual_information(&p)
    );
    println!(
        "H~(W^(λ)) - 2 H(λ)     = {:.12}",
        tilde_entropy(wl.weights()) - 2.0 * lambda.entropy()
    );
    println!(
        "H(P) - H(λ) - H(W) - ln 2 = {:.3e}",
        p.entropy() - lambda.entropy() - tilde_entropy(&s.w_vector()) - std::f64::consts::LN_2
    );
}
