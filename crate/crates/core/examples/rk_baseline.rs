//! The Dormand–Prince baseline at several tolerances.

use star_resolvent::{reference_solution, rk_baseline, FunctionSpec};

fn main() -> star_resolvent::Result<()> {
    let mesh: Vec<f64> = (0..100).map(|i| i as f64 / 99.0).collect();
    let f = FunctionSpec::Monomial { degree: 3 };
    for tol in [1e-6, 1e-9, 1e-12, f64::EPSILON] {
        let out = rk_baseline(&f, &mesh, tol, tol)?;
        let err = mesh
            .iter()
            .zip(&out.values)
            .map(|(&t, &y)| {
                let r = reference_solution(&f, t).unwrap();
                ((y - r) / r).abs()
            })
            .fold(0.0, f64::max);
        println!(
            "tol {tol:.1e} -> used {:.1e}{} steps {}+{} max rel err {err:.2e}",
            out.rel_tol,
            if out.clamped { " (clamped)" } else { "" },
            out.accepted_steps,
            out.rejected_steps
        );
    }
    Ok(())
}
