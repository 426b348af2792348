//! A JSON problem description driven through the same path as `solve`.

use star_resolvent::cli::{solve_report, ProblemConfig};

fn main() {
    let config: ProblemConfig = serde_json::from_str(
        r#"{"function":{"kind":"log1p"},"M":40,"T":1.0,"mesh_points":5,"output_format":"json"}"#,
    )
    .expect("valid config");
    let report = solve_report(&config).expect("solve");
    for row in &report.rows {
        println!(
            "t={:.2} y={:.15} ref={:.15} err={:.1e}",
            row.t, row.y_hat, row.y_ref, row.rel_err
        );
    }
    println!("{}", serde_json::to_string_pretty(&report.summary).unwrap());
}
