//! y' = f(t) y, y(0) = 1 on [0, T] for a few right-hand sides.

use star_resolvent::{reference_solution, solve_ode, Basis, FunctionSpec, SolveConfig};

fn main() -> star_resolvent::Result<()> {
    let config = SolveConfig::default();
    for (f, t_end, m) in [
        (FunctionSpec::Cos, 1.0, 25),
        (FunctionSpec::Log1p, 1.0, 100),
        (
            FunctionSpec::Polynomial {
                coeffs: vec![1.0, -2.0, 0.5],
            },
            3.0,
            60,
        ),
    ] {
        let sol = solve_ode(&f, &Basis::new(m, t_end)?, &config)?;
        let y = sol.evaluate(t_end)?;
        let exact = reference_solution(&f, t_end)?;
        println!(
            "{:<22} T={t_end} M={m:<3} b={:<2} y(T)={y:.15} rel.err={:.1e}",
            f.label(),
            sol.bandwidth_used,
            ((y - exact) / exact).abs()
        );
        if let Some(d) = &sol.diagnostics {
            println!("    {d}");
        }
    }
    Ok(())
}
