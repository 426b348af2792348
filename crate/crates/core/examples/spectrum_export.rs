//! Full spectrum of F as CSV, ready for plotting.

use star_resolvent::diagnostics::{spectrum_csv, Normalization};
use star_resolvent::{build_coeff_matrix, Basis, Diagnostics, DiagnosticsConfig, FunctionSpec};

fn main() -> star_resolvent::Result<()> {
    let fm = build_coeff_matrix(&FunctionSpec::Cos, &Basis::unit(50)?)?;
    let config = DiagnosticsConfig {
        with_spectrum: true,
        normalization: Normalization::Reference,
        ..Default::default()
    };
    let d = Diagnostics::measure(&fm, &config)?;
    let eigs = d.spectrum.unwrap_or_default();
    let csv = spectrum_csv(&eigs);
    let path = std::env::temp_dir().join("spectrum_cos_50.csv");
    std::fs::write(&path, &csv).expect("write csv");
    println!(
        "{} eigenvalues, radius {:.4}, written to {}",
        eigs.len(),
        d.spectral_radius,
        path.display()
    );
    print!("{}", csv.lines().take(6).collect::<Vec<_>>().join("\n"));
    println!("\n...");
    Ok(())
}
