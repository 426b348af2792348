//! Maximal relative error on a 100-point mesh, solver against the
//! Runge–Kutta baseline.

use star_resolvent::cli::bench_report;
use star_resolvent::Threshold;

fn main() {
    let functions: Vec<String> = ["f1", "f2", "f3", "f4", "f5"].map(String::from).to_vec();
    let rows = bench_report(&[25, 100], &functions, 100, f64::EPSILON, Threshold::default()).expect("bench");
    for row in rows {
        let cells: Vec<String> = row
            .cells
            .iter()
            .map(|c| format!("{:.2e}", c.max_rel_err))
            .collect();
        println!("{:<6} {}", row.method, cells.join("  "));
        if let Some(tol) = row.clamped_tolerance {
            println!("       (tolerance raised to {tol:e})");
        }
    }
}
