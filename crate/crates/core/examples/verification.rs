//! Runs every randomized verification suite at a small size and prints the
//! reports as JSON.

use majorant::cli::{verify_suite, Suite};

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(3);
    let summary = verify_suite(n, 500, 7, Suite::All).unwrap();
    println!("{}", serde_json::to_string_pretty(&summary).unwrap());
    std::process::exit(if summary.passed { 0 } else { 1 });
}
