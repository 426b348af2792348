//! Descriptions of the coefficient function `f(t)` of `y' = f(t) y`.

use serde::{Deserialize, Serialize};

use crate::basis::Basis;
use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, QuadratureConfig};
use crate::special::{legendre_q, spherical_bessel_j};

/// Coefficients below this fraction of the largest one are dropped from
/// closed-form expansions.
const SERIES_CHOP: f64 = 1e-24;

/// Coefficients obtained by quadrature are chopped at this multiple of the
/// rounding floor.
const NOISE_CHOP: f64 = 8.0 * f64::EPSILON;

const MAX_SERIES_LEN: usize = 4096;

/// A scalar function on `[0, T]`, serialized with a `"kind"` tag:
///
/// ```json
/// {"kind":"polynomial","coeffs":[0,0,0,1]}
/// {"kind":"cos"}
/// {"kind":"log1p"}
/// {"kind":"constant","value":1}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FunctionSpec {
    Constant {
        value: f64,
    },
    Monomial {
        degree: u32,
    },
    /// `sum_i coeffs[i] t^i`.
    Polynomial {
        coeffs: Vec<f64>,
    },
    Cos,
    /// `log(t + 1)`.
    Log1p,
    /// Values at the nodes of the Gauss–Legendre rule with `nodes.len()`
    /// points on `[0, T]`.
    Sampled {
        nodes: Vec<f64>,
        values: Vec<f64>,
    },
}

impl FunctionSpec {
    /// The five test functions `1, t, t^3, cos(t), log(t + 1)`.
    pub fn catalog() -> Vec<(&'static str, FunctionSpec)> {
        vec![
            ("f1", FunctionSpec::Constant { value: 1.0 }),
            ("f2", FunctionSpec::Monomial { degree: 1 }),
            ("f3", FunctionSpec::Monomial { degree: 3 }),
            ("f4", FunctionSpec::Cos),
            ("f5", FunctionSpec::Log1p),
        ]
    }

    /// Looks up a catalog entry by id (`f1`..`f5`) or by a short name
    /// (`one`, `t`, `t3`, `cos`, `log1p`); `zero` gives the zero function.
    pub fn from_name(name: &str) -> Result<FunctionSpec> {
        let id = match name.trim().to_ascii_lowercase().as_str() {
            "f1" | "one" | "1" => "f1",
            "f2" | "t" => "f2",
            "f3" | "t3" | "t^3" => "f3",
            "f4" | "cos" => "f4",
            "f5" | "log" | "log1p" => "f5",
            "zero" | "0" => return Ok(Self::zero()),
            other => return Err(Error::Config(format!("unknown function '{other}'"))),
        };
        Ok(Self::catalog()
            .into_iter()
            .find(|(k, _)| *k == id)
            .map(|(_, f)| f)
            .expect("catalog ids are fixed"))
    }

    pub fn zero() -> Self {
        FunctionSpec::Constant { value: 0.0 }
    }

    /// Human-readable formula.
    pub fn label(&self) -> String {
        match self {
            FunctionSpec::Constant { value } => format!("{value}"),
            FunctionSpec::Monomial { degree: 0 } => "1".into(),
            FunctionSpec::Monomial { degree: 1 } => "t".into(),
            FunctionSpec::Monomial { degree } => format!("t^{degree}"),
            FunctionSpec::Polynomial { coeffs } => format!("poly{coeffs:?}"),
            FunctionSpec::Cos => "cos(t)".into(),
            FunctionSpec::Log1p => "log(t+1)".into(),
            FunctionSpec::Sampled { nodes, .. } => format!("sampled[{}]", nodes.len()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FunctionSpec::Constant { value } if !value.is_finite() => {
                Err(Error::Config(format!("constant {value} is not finite")))
            }
            FunctionSpec::Polynomial { coeffs } if coeffs.is_empty() => {
                Err(Error::Config("polynomial needs at least one coefficient".into()))
            }
            FunctionSpec::Polynomial { coeffs } if coeffs.iter().any(|c| !c.is_finite()) => {
                Err(Error::Config("polynomial coefficients must be finite".into()))
            }
            FunctionSpec::Sampled { nodes, values } => {
                if nodes.is_empty() || nodes.len() != values.len() {
                    return Err(Error::Config(format!(
                        "sampled function has {} nodes and {} values",
                        nodes.len(),
                        values.len()
                    )));
                }
                if values.iter().chain(nodes).any(|v| !v.is_finite()) {
                    return Err(Error::Config("sampled data must be finite".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Monomial coefficients, if the function is a polynomial.
    pub fn polynomial_coefficients(&self) -> Option<Vec<f64>> {
        match self {
            FunctionSpec::Constant { value } => Some(vec![*value]),
            FunctionSpec::Monomial { degree } => {
                let mut c = vec![0.0; *degree as usize + 1];
                c[*degree as usize] = 1.0;
                Some(c)
            }
            FunctionSpec::Polynomial { coeffs } => Some(coeffs.clone()),
            _ => None,
        }
    }

    /// Samples `f` at the Gauss–Legendre nodes with `n` points on `[0, T]`.
    pub fn sample<F: Fn(f64) -> f64>(f: F, n: usize, interval_end: f64) -> Result<Self> {
        let rule = gauss_legendre(n, 0.0, interval_end)?;
        let nodes = rule.nodes().to_vec();
        let values = nodes.iter().map(|&t| f(t)).collect();
        let spec = FunctionSpec::Sampled { nodes, values };
        spec.validate()?;
        Ok(spec)
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            FunctionSpec::Constant { value } => *value,
            FunctionSpec::Monomial { degree } => t.powi(*degree as i32),
            FunctionSpec::Polynomial { coeffs } => coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c),
            FunctionSpec::Cos => t.cos(),
            FunctionSpec::Log1p => t.ln_1p(),
            FunctionSpec::Sampled { nodes, values } => barycentric(nodes, values, t),
        }
    }

    pub fn has_closed_form_antiderivative(&self) -> bool {
        !matches!(self, FunctionSpec::Sampled { .. })
    }

    /// `integral_0^t f`, when a closed form is known.
    pub fn antiderivative(&self, t: f64) -> Option<f64> {
        match self {
            FunctionSpec::Constant { value } => Some(value * t),
            FunctionSpec::Monomial { degree } => {
                let d = *degree as i32 + 1;
                Some(t.powi(d) / d as f64)
            }
            FunctionSpec::Polynomial { coeffs } => Some(
                coeffs
                    .iter()
                    .enumerate()
                    .rev()
                    .fold(0.0, |acc, (i, c)| acc * t + c / (i + 1) as f64)
                    * t,
            ),
            FunctionSpec::Cos => Some(t.sin()),
            FunctionSpec::Log1p => Some((t + 1.0) * t.ln_1p() - t),
            FunctionSpec::Sampled { .. } => None,
        }
    }

    /// Expansion coefficients `a_j = integral_0^T f p_j` in the shifted
    /// orthonormal Legendre basis on `[0, T]`, with the negligible tail removed.
    ///
    /// Polynomials are expanded exactly; `cos` and `log1p` use closed forms
    /// in terms of spherical Bessel functions and Legendre functions of the
    /// second kind, so small coefficients keep full relative accuracy.
    pub fn legendre_coefficients(&self, interval_end: f64) -> Result<Vec<f64>> {
        self.validate()?;
        if let Some(coeffs) = self.polynomial_coefficients() {
            return Ok(polynomial_to_legendre(&coeffs, interval_end));
        }
        let coeffs = match self {
            FunctionSpec::Cos => cos_series(interval_end),
            FunctionSpec::Log1p => log1p_series(interval_end),
            FunctionSpec::Sampled { nodes, values } => return sampled_series(nodes, values, interval_end),
            _ => unreachable!("polynomial kinds handled above"),
        };
        Ok(chop(coeffs, SERIES_CHOP))
    }
}

/// Projects an arbitrary function onto the basis by Gauss–Legendre
/// quadrature. The rule has `order + extra_nodes` points and is checked
/// against a rule with `escalation` more points; on disagreement the node
/// count doubles until the two agree.
pub fn legendre_coefficients_of<F: Fn(f64) -> f64>(
    f: F,
    basis: &Basis,
    config: &QuadratureConfig,
) -> Result<Vec<f64>> {
    let t_end = basis.interval_end();
    let mut n = config.nodes_for(basis.order());
    let project = |n: usize| -> Result<Vec<f64>> {
        let rule = gauss_legendre(n, 0.0, t_end)?;
        let values: Vec<f64> = rule.nodes().iter().map(|&t| f(t)).collect();
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite {
                t: rule.nodes()[i],
                value: *v,
            });
        }
        Ok(project_samples(rule.nodes(), rule.weights(), &values, basis, n))
    };
    for _ in 0..8 {
        let coarse = project(n)?;
        let fine = project(n + config.escalation)?;
        let scale = fine
            .iter()
            .fold(0.0f64, |m, c| m.max(c.abs()))
            .max(f64::MIN_POSITIVE);
        let agree = coarse
            .iter()
            .zip(&fine)
            .all(|(a, b)| (a - b).abs() <= config.agreement * scale);
        if agree {
            return Ok(chop(fine, NOISE_CHOP));
        }
        n *= 2;
    }
    Err(Error::NoConvergence {
        routine: "projection quadrature",
        iterations: 8,
    })
}

fn project_samples(nodes: &[f64], weights: &[f64], values: &[f64], basis: &Basis, n: usize) -> Vec<f64> {
    let mut coeffs = vec![0.0; n];
    for ((&t, &w), &v) in nodes.iter().zip(weights).zip(values) {
        let p = basis.eval_unchecked(n, t);
        for (c, pj) in coeffs.iter_mut().zip(p.iter()) {
            *c += w * v * pj;
        }
    }
    coeffs
}

fn sampled_series(nodes: &[f64], values: &[f64], interval_end: f64) -> Result<Vec<f64>> {
    let n = nodes.len();
    let rule = gauss_legendre(n, 0.0, interval_end)?;
    let tol = 1e-12 * interval_end;
    if rule.nodes().iter().zip(nodes).any(|(a, b)| (a - b).abs() > tol) {
        return Err(Error::Config(format!(
            "sampled nodes do not match the {n}-point Gauss-Legendre rule on [0, {interval_end}]"
        )));
    }
    let basis = Basis::new(n, interval_end)?;
    let coeffs = project_samples(rule.nodes(), rule.weights(), values, &basis, n);
    Ok(chop(coeffs, NOISE_CHOP))
}

/// Drops trailing coefficients below `rel * max|c|`, keeping at least one.
fn chop(mut coeffs: Vec<f64>, rel: f64) -> Vec<f64> {
    let max = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let cut = rel * max;
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.abs() <= cut) {
        coeffs.pop();
    }
    coeffs
}

/// Legendre coefficients of `sum_i c_i t^i` by Horner's scheme on the
/// Jacobi matrix of multiplication by `t`, applied to the expansion of 1.
fn polynomial_to_legendre(coeffs: &[f64], interval_end: f64) -> Vec<f64> {
    let basis = Basis::new(1, interval_end).expect("interval validated by caller");
    let one = interval_end.sqrt();
    let mut v = vec![coeffs[coeffs.len() - 1] * one];
    for &c in coeffs.iter().rev().skip(1) {
        v = apply_jacobi(&basis, &v);
        v[0] += c * one;
    }
    chop(v, 0.0)
}

/// `J v` for a coefficient vector `v`; the result is one entry longer.
pub(crate) fn apply_jacobi(basis: &Basis, v: &[f64]) -> Vec<f64> {
    let n = v.len();
    let mut out = vec![0.0; n + 1];
    let diag = basis.jacobi_diagonal();
    for (k, &vk) in v.iter().enumerate() {
        out[k] += diag * vk;
        let beta_up = basis.jacobi_offdiagonal(k + 1);
        out[k + 1] += beta_up * vk;
        if k > 0 {
            out[k - 1] += basis.jacobi_offdiagonal(k) * vk;
        }
    }
    out
}

/// `cos(t)` on `[0, T]`: with `t = a(x + 1)`, `a = T/2`,
/// `integral_{-1}^{1} cos(a + a x) P_j(x) dx = 2 j_j(a) cos(a + j pi/2)`.
fn cos_series(interval_end: f64) -> Vec<f64> {
    let a = 0.5 * interval_end;
    let n = (2.0 * a).ceil() as usize + 48;
    let j = spherical_bessel_j(a, n.min(MAX_SERIES_LEN));
    let (s, c) = a.sin_cos();
    j.iter()
        .enumerate()
        .map(|(k, jk)| {
            let phase = match k % 4 {
                0 => c,
                1 => -s,
                2 => -c,
                _ => s,
            };
            ((2 * k + 1) as f64 * interval_end).sqrt() * jk * phase
        })
        .collect()
}

/// `log(1 + t)` on `[0, T]`: `log(1 + t) = log(a) + log(r + x)` with
/// `a = T/2`, `r = 1 + 2/T`, and for `m >= 1` the Legendre coefficients of
/// `log(r + x)` are `(-1)^(m+1) (Q_{m-1}(r) - Q_{m+1}(r))`.
fn log1p_series(interval_end: f64) -> Vec<f64> {
    let r = 1.0 + 2.0 / interval_end;
    let rho = r + (r * r - 1.0).sqrt();
    let n = ((30.0 * std::f64::consts::LN_10 / rho.ln()).ceil() as usize + 2).min(MAX_SERIES_LEN);
    let q = legendre_q(r, n + 1);
    let mut out = Vec::with_capacity(n);
    // mean value: integral_0^T log1p = (T + 1) log1p(T) - T
    out.push((((interval_end + 1.0) * interval_end.ln_1p()) - interval_end) / interval_end.sqrt());
    for m in 1..n {
        let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
        let c = sign * (q[m - 1] - q[m + 1]);
        out.push(c * (interval_end / (2 * m + 1) as f64).sqrt());
    }
    out
}

/// Barycentric Lagrange interpolation through `(nodes, values)`.
fn barycentric(nodes: &[f64], values: &[f64], t: f64) -> f64 {
    let n = nodes.len();
    if let Some(i) = nodes.iter().position(|&x| x == t) {
        return values[i];
    }
    // weights 1 / prod_{j != i} (x_i - x_j), rescaled through logs
    let mut log_w = vec![0.0; n];
    let mut sign_w = vec![1.0; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let d = nodes[i] - nodes[j];
                log_w[i] -= d.abs().ln();
                if d < 0.0 {
                    sign_w[i] = -sign_w[i];
                }
            }
        }
    }
    let max_log = log_w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..n {
        let w = sign_w[i] * (log_w[i] - max_log).exp() / (t - nodes[i]);
        num += w * values[i];
        den += w;
    }
    num / den
}
