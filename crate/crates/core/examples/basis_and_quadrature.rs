//! Shifted Legendre basis on [0, T], its antiderivatives, and Gauss rules.

use star_resolvent::{gauss_legendre, Basis};

fn main() -> star_resolvent::Result<()> {
    let basis = Basis::new(6, 2.0)?;
    let t = 0.7;
    println!("p_k({t})   = {:?}", basis.eval(t)?.to_vec());
    println!("Q_k({t})   = {:?}", basis.eval_antiderivatives(t)?.to_vec());
    println!("phi(0)     = {:?}", basis.start_vector().to_vec());

    let rule = gauss_legendre(8, 0.0, 2.0)?;
    let gram01 = rule.integrate(|s| {
        let p = basis.eval(s).unwrap();
        p[0] * p[1]
    })?;
    let norm5 = rule.integrate(|s| basis.eval(s).unwrap()[5].powi(2))?;
    println!("<p0, p1> = {gram01:.2e}, <p5, p5> = {norm5:.15}");

    let cos = gauss_legendre(32, 0.0, 1.0)?.integrate(f64::cos)?;
    println!("int_0^1 cos = {cos:.16} (sin 1 = {:.16})", 1f64.sin());
    Ok(())
}
