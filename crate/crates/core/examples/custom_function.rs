//! Functions outside the catalog: a polynomial, a sampled closure, and a
//! JSON description.

use star_resolvent::coeff::build_coeff_matrix_from_fn;
use star_resolvent::{rk_baseline, solve_with_matrix, Basis, FunctionSpec, QuadratureConfig, SolveConfig};

fn main() -> star_resolvent::Result<()> {
    let basis = Basis::unit(60)?;
    let config = SolveConfig::default();

    let f: FunctionSpec = serde_json::from_str(r#"{"kind":"polynomial","coeffs":[0.5,0,-1]}"#).unwrap();
    let sol = star_resolvent::solve_ode(&f, &basis, &config)?;
    println!("{}: y(1) = {:.15}", f.label(), sol.evaluate(1.0)?);

    // no closed form for exp(∫ sin(3t)/(1+t)), so compare against RK
    let g = |t: f64| (3.0 * t).sin() / (1.0 + t);
    let fm = build_coeff_matrix_from_fn(g, &basis, &QuadratureConfig::default())?;
    let sol = solve_with_matrix(&fm, &config)?;
    let sampled = FunctionSpec::sample(g, 80, 1.0)?;
    let rk = rk_baseline(&sampled, &[1.0], 1e-13, 1e-13)?;
    let y = sol.evaluate(1.0)?;
    println!(
        "sin(3t)/(1+t): y(1) = {y:.15}, RK = {:.15}, diff {:.1e}",
        rk.values[0],
        (y - rk.values[0]).abs()
    );
    Ok(())
}
