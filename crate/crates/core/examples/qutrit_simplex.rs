//! Conditional bounds for the `O3` qutrit pair on the ordered simplex.
//! Writes CSV to the path given as the first argument, or to stdout.

use majorant::cli::{simplex_csv, simplex_qutrit, Base};
use majorant::linalg::named;

fn main() {
    let rows = simplex_qutrit(&named::o3(), 30).unwrap();
    let csv = simplex_csv(&rows, Base::Nats);
    match std::env::args().nth(1) {
        Some(path) => std::fs::write(&path, csv).unwrap(),
        None => print!("{csv}"),
    }
    let dominated = rows
        .iter()
        .filter(|r| r.prkz > r.direct_sum.max(r.berta))
        .count();
    eprintln!(
        "{} points, B_PRKZ strictly largest at {dominated}",
        rows.len()
    );
}
