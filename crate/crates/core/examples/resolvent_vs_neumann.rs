//! The ★-resolvent by one linear solve, and the Neumann series converging
//! to it.

use star_resolvent::diagnostics::spectral_radius;
use star_resolvent::{build_coeff_matrix, star_neumann, star_resolvent_solve, Basis, FunctionSpec};

fn main() -> star_resolvent::Result<()> {
    let basis = Basis::unit(25)?;
    let rhs = basis.start_vector();
    for (id, f) in FunctionSpec::catalog() {
        let fm = build_coeff_matrix(&f, &basis)?;
        let direct = star_resolvent_solve(&fm, &rhs)?;
        print!(
            "{id} rho {:.4} residual {:.1e} {:?}\n   K:",
            spectral_radius(&fm)?,
            direct.residual,
            direct.path
        );
        for k in [2, 4, 8, 12, 16] {
            let series = star_neumann(&fm, &rhs, k);
            let gap = direct
                .x
                .iter()
                .zip(&series)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            print!("  {k}:{gap:.1e}");
        }
        println!();
    }
    Ok(())
}
