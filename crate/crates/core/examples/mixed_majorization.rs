//! Builds `W^(λ)` for a mixed state and checks `p ⊕ q ≺ W^(λ)` on sampled
//! states with that spectrum.

use majorant::bounds::{capital_s, pure_majorant, sub_coefficients, w_lambda};
use majorant::linalg::haar_unitary;
use majorant::majorize::{is_majorized_by, partial_sum_gaps};
use majorant::states::{measurement_probs, random_density_with_spectrum, Spectrum};

fn main() {
    let u = haar_unitary(4, 5000).unwrap();
    let s = sub_coefficients(&u).unwrap();
    let lambda = Spectrum::new(vec![0.6, 0.25, 0.1, 0.05]).unwrap();

    let w = w_lambda(&s, &lambda);
    println!("S        = {:?}", capital_s(&s, &lambda));
    println!("W^(λ)    = {:?}", w.values());
    println!("{{1}} ⊕ W = {:?}", pure_majorant(&s).values());

    let mut tightest = f64::NEG_INFINITY;
    for seed in 0..1000 {
        let rho = random_density_with_spectrum(&lambda, seed);
        let p = measurement_probs(&rho, None).unwrap();
        let q = measurement_probs(&rho, Some(&u)).unwrap();
        let pq = p.direct_sum(&q);
        assert!(is_majorized_by(&pq, w.weights(), 1e-9).unwrap());
        let gaps = partial_sum_gaps(&pq, w.weights());
        let worst = gaps[..gaps.len() - 1]
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        tightest = tightest.max(worst);
    }
    println!(
        "1000 states: majorized; closest partial sum is {:.3e} below W^(λ)",
        -tightest
    );
}
