//! Brute-force references shared by the integration tests. Nothing here goes
//! through the closed-form antiderivatives or the structured construction.

#![allow(dead_code)]

use nalgebra::DMatrix;
use star_resolvent::gauss_legendre;

/// `sqrt((2k+1)/T) P_k(2t/T - 1)` for `k < m`, by the plain Bonnet recurrence.
pub fn shifted_legendre(m: usize, interval_end: f64, t: f64) -> Vec<f64> {
    let x = 2.0 * t / interval_end - 1.0;
    let mut p = Vec::with_capacity(m);
    let (mut a, mut b) = (1.0, x);
    for k in 0..m {
        let v = match k {
            0 => 1.0,
            1 => x,
            _ => {
                let kf = k as f64;
                let c = ((2.0 * kf - 1.0) * x * b - (kf - 1.0) * a) / kf;
                a = b;
                b = c;
                c
            }
        };
        p.push(v * ((2 * k + 1) as f64 / interval_end).sqrt());
    }
    p
}

/// `∫∫ K(τ, ρ) Θ(τ - ρ) p_k(τ) p_l(ρ) dρ dτ` by tensor Gauss rules, the
/// ρ-rule living on `[0, τ]` so the jump of Θ sits on a panel boundary.
pub fn volterra_kernel_matrix(
    m: usize,
    interval_end: f64,
    nodes: usize,
    kernel: &dyn Fn(f64, f64) -> f64,
) -> DMatrix<f64> {
    let outer = gauss_legendre(nodes, 0.0, interval_end).unwrap();
    let mut out = DMatrix::zeros(m, m);
    for (&tau, &w) in outer.nodes().iter().zip(outer.weights()) {
        let pk = shifted_legendre(m, interval_end, tau);
        let inner = gauss_legendre(nodes, 0.0, tau).unwrap();
        let mut row = vec![0.0; m];
        for (&rho, &v) in inner.nodes().iter().zip(inner.weights()) {
            let pl = shifted_legendre(m, interval_end, rho);
            let kv = kernel(tau, rho);
            for l in 0..m {
                row[l] += v * kv * pl[l];
            }
        }
        for k in 0..m {
            for l in 0..m {
                out[(k, l)] += w * pk[k] * row[l];
            }
        }
    }
    out
}

/// Coefficient matrix of `f(τ) Θ(τ - ρ)`.
pub fn oracle_coeff_matrix(m: usize, interval_end: f64, f: &dyn Fn(f64) -> f64) -> DMatrix<f64> {
    volterra_kernel_matrix(m, interval_end, 40, &|tau, _| f(tau))
}

/// Equispaced mesh of `n` points on `[0, 1]`, endpoints included.
pub fn unit_mesh(n: usize) -> Vec<f64> {
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}

pub fn max_rel_err(approx: &[f64], exact: &[f64]) -> f64 {
    approx
        .iter()
        .zip(exact)
        .map(|(a, e)| ((a - e) / e).abs())
        .fold(0.0, f64::max)
}
