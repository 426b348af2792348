//! Coefficient matrices of f(t) Θ(t - s): the Theta matrix, the catalog,
//! and a cross-check against direct quadrature.

use star_resolvent::coeff::build_coeff_matrix_by_quadrature;
use star_resolvent::diagnostics::{numerical_bandwidth, Threshold};
use star_resolvent::{build_coeff_matrix, build_theta_matrix, Basis, FunctionSpec, QuadratureConfig};

fn main() -> star_resolvent::Result<()> {
    let basis = Basis::unit(6)?;
    println!("Theta matrix, M = 6:{}", build_theta_matrix(&basis).entries());

    let basis = Basis::unit(40)?;
    for (id, f) in FunctionSpec::catalog() {
        let fm = build_coeff_matrix(&f, &basis)?;
        let quad = build_coeff_matrix_by_quadrature(&f, &basis, &QuadratureConfig::default())?;
        let diff = (fm.entries() - quad.entries()).amax();
        println!(
            "{id} {:<10} bandwidth {:>2}  |structured - quadrature| = {diff:.1e}",
            f.label(),
            numerical_bandwidth(&fm, Threshold::default())
        );
    }
    Ok(())
}
