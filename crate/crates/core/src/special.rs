//! Minimal solutions of two three-term recurrences, by Miller's backward
//! algorithm. Both sequences decay rapidly in `n`, and the backward sweep
//! keeps full relative accuracy in the tail, which forward recurrence or
//! quadrature cannot deliver.

const RESCALE: f64 = 1e100;

/// Spherical Bessel functions `j_0(a), ..., j_{n-1}(a)` for `a > 0`.
///
/// Normalized through `sum_n (2n + 1) j_n(a)^2 = 1`.
pub(crate) fn spherical_bessel_j(a: f64, n: usize) -> Vec<f64> {
    debug_assert!(a > 0.0);
    let start = n + 2 * a.ceil() as usize + 40;
    let mut values = vec![0.0; start + 2];
    values[start] = 1e-300;
    for k in (1..=start).rev() {
        let next = (2 * k + 1) as f64 / a * values[k] - values[k + 1];
        values[k - 1] = next;
        if next.abs() > RESCALE {
            for v in &mut values[k - 1..] {
                *v /= RESCALE;
            }
        }
    }
    let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for v in &mut values {
        *v /= peak;
    }
    let norm: f64 = values
        .iter()
        .enumerate()
        .map(|(k, v)| (2 * k + 1) as f64 * v * v)
        .sum::<f64>()
        .sqrt();
    // overall sign from whichever of j_0, j_1 is further from a zero
    let (s, c) = a.sin_cos();
    let j0 = s / a;
    let j1 = s / (a * a) - c / a;
    let sign = if j0.abs() >= j1.abs() {
        j0.signum() * values[0].signum()
    } else {
        j1.signum() * values[1].signum()
    };
    values.truncate(n);
    values.iter().map(|v| sign * v / norm).collect()
}

/// Legendre functions of the second kind `Q_0(r), ..., Q_{n-1}(r)` for `r > 1`.
///
/// Normalized through `Q_0(r) = atanh(1/r)`.
pub(crate) fn legendre_q(r: f64, n: usize) -> Vec<f64> {
    debug_assert!(r > 1.0);
    let rho = r + (r * r - 1.0).sqrt();
    let extra = (25.0 * std::f64::consts::LN_10 / rho.ln()).ceil() as usize + 10;
    let start = n + extra.min(100_000);
    let mut values = vec![0.0; start + 2];
    values[start] = 1e-300;
    for k in (1..=start).rev() {
        let kf = k as f64;
        // k Q_{k-1} = (2k + 1) r Q_k - (k + 1) Q_{k+1}
        let next = ((2.0 * kf + 1.0) * r * values[k] - (kf + 1.0) * values[k + 1]) / kf;
        values[k - 1] = next;
        if next.abs() > RESCALE {
            for v in &mut values[k - 1..] {
                *v /= RESCALE;
            }
        }
    }
    let scale = (1.0 / r).atanh() / values[0];
    values.truncate(n);
    values.iter().map(|v| v * scale).collect()
}
