//! Writes a Haar unitary as a JSON matrix, reads it back and checks that
//! every entry survives bit for bit.

use majorant::cli::{matrix_from_json, matrix_to_json};
use majorant::linalg::haar_unitary;

fn main() {
    let u = haar_unitary(3, 42).unwrap();
    let text = matrix_to_json(&u);
    println!("{text}");
    let back = matrix_from_json(&text).unwrap();
    let exact = u
        .to_row_major()
        .iter()
        .zip(back.to_row_major())
        .all(|(a, b)| a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits());
    eprintln!("round trip bit-exact: {exact}");
}
