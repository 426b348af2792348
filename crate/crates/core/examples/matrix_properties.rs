//! Bandwidth, spectral radius and extreme singular values of F for the
//! catalog at M = 25, 100, 500.

use star_resolvent::cli::diagnose_report;
use star_resolvent::DiagnosticsConfig;

fn main() -> star_resolvent::Result<()> {
    let functions: Vec<String> = ["f1", "f2", "f3", "f4", "f5"].map(String::from).to_vec();
    let records = diagnose_report(&[25, 100, 500], &functions, 1.0, &DiagnosticsConfig::default())
        .map_err(|e| star_resolvent::Error::Config(e.to_string()))?;
    for r in records {
        println!("{:<3} {}", r.function, r.diagnostics);
    }
    Ok(())
}
