//! Shannon, Rényi and Tsallis lower bounds from `W^(λ)` compared with the
//! entropy sums of sampled states.

use majorant::bounds::{renyi_bound, shannon_bound, sub_coefficients, tsallis_bound, w_lambda};
use majorant::linalg::named;
use majorant::majorize::{renyi, shannon, tsallis};
use majorant::states::{measurement_probs, random_density_with_spectrum, Spectrum};

fn main() {
    let u = named::o3();
    let s = sub_coefficients(&u).unwrap();
    let lambda = Spectrum::new(vec![0.8, 0.15, 0.05]).unwrap();
    let w = w_lambda(&s, &lambda);

    let states: Vec<_> = (0..2000)
        .map(|seed| {
            let rho = random_density_with_spectrum(&lambda, seed);
            (
                measurement_probs(&rho, None).unwrap(),
                measurement_probs(&rho, Some(&u)).unwrap(),
            )
        })
        .collect();

    let min_over = |f: &dyn Fn(&_, &_) -> f64| {
        states
            .iter()
            .map(|(p, q)| f(p, q))
            .fold(f64::INFINITY, f64::min)
    };

    let b = shannon_bound(&w);
    let m = min_over(&|p, q| shannon(p).unwrap() + shannon(q).unwrap());
    println!("shannon      bound {b:.6}  sampled min {m:.6}");
    for alpha in [0.1, 0.5, 0.9] {
        let b = renyi_bound(&w, alpha).unwrap();
        let m = min_over(&|p, q| renyi(p, alpha).unwrap() + renyi(q, alpha).unwrap());
        println!("renyi   {alpha:<4} bound {b:.6}  sampled min {m:.6}");
    }
    for alpha in [0.5, 2.0, 3.0] {
        let b = tsallis_bound(&w, alpha).unwrap();
        let m = min_over(&|p, q| tsallis(p, alpha).unwrap() + tsallis(q, alpha).unwrap());
        println!("tsallis {alpha:<4} bound {b:.6}  sampled min {m:.6}");
    }
}
