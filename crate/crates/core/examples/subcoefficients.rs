//! Coefficients `s_k` and the pure-state majorant `W` for a few unitaries.
//!
//! ```text
//! cargo run --example subcoefficients
//! ```

use majorant::bounds::sub_coefficients;
use majorant::linalg::{haar_unitary, named, ComplexMatrix};
use majorant::majorize::tilde_entropy;

fn show(name: &str, u: &ComplexMatrix) {
    let s = sub_coefficients(u).expect("unitary input");
    let w = s.w_vector();
    println!("{name:<12} N={}  c={:.6}", s.dim(), s.c());
    println!("  s = {:?}", s.values());
    println!("  W = {:?}", w.values());
    println!("  H(W) = {:.6} nats", tilde_entropy(&w));
}

fn main() {
    show("identity", &ComplexMatrix::identity(3));
    show("hadamard2", &named::hadamard2());
    show("o3", &named::o3());
    show("fourier(4)", &named::fourier(4).unwrap());
    show("haar(5)", &haar_unitary(5, 7).unwrap());
}
