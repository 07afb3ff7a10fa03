//! Qubit bounds against the smaller eigenvalue at `θ = π/3`, as CSV on
//! stdout, followed by the point where the new bound stops dominating.

use std::f64::consts::PI;

use majorant::cli::{sweep_csv, sweep_qubit, Base, Grid, SweepMode};

fn main() {
    let rows = sweep_qubit(
        SweepMode::Lambda,
        PI / 3.0,
        Grid {
            min: 0.0,
            max: 0.5,
            steps: 26,
        },
    )
    .unwrap();
    print!("{}", sweep_csv(&rows, Base::Nats));

    let fine = sweep_qubit(
        SweepMode::Lambda,
        PI / 3.0,
        Grid {
            min: 0.0,
            max: 0.5,
            steps: 5001,
        },
    )
    .unwrap();
    let cross = fine
        .iter()
        .skip(1)
        .find(|r| r.prkz <= r.berta.max(r.maassen_uffink).max(r.direct_sum));
    if let Some(r) = cross {
        eprintln!("B_PRKZ exceeds every baseline for 0 < λ < {:.4}", r.x);
    }
}
