//! The ★-product as a matrix product: Θ★Θ is the ramp (t - s)Θ(t - s),
//! except in the last rows where truncation shows.

use star_resolvent::{build_theta_matrix, star_product, Basis};

fn main() -> star_resolvent::Result<()> {
    let basis = Basis::unit(12)?;
    let theta = build_theta_matrix(&basis);
    let ramp = star_product(&theta, &theta)?;
    println!("(Θ★Θ)(0,0) = {:.16} (1/6 = {:.16})", ramp.get(0, 0), 1.0 / 6.0);
    println!("rows carrying truncation error: {}", ramp.unreliable_rows());

    // the last row misses the contribution of the dropped p_M
    let m = basis.order();
    for k in m - 3..m {
        let row: Vec<String> = (0..m).map(|l| format!("{:9.2e}", ramp.get(k, l))).collect();
        println!("row {k:>2}: {}", row.join(" "));
    }
    Ok(())
}
