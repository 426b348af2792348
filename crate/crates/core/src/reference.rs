//! Reference solutions: `exp(∫₀ᵗ f)` in closed form, and an adaptive
//! Dormand–Prince 5(4) integrator for everything else.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::FunctionSpec;

/// Tolerances below this are raised to it; the pair stalls near roundoff.
pub const MIN_RK_TOLERANCE: f64 = 1e-13;

const MAX_STEPS: usize = 1_000_000;

pub fn reference_solution(fspec: &FunctionSpec, t: f64) -> Result<f64> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("reference solution needs t >= 0, got {t}")));
    }
    fspec
        .antiderivative(t)
        .map(f64::exp)
        .ok_or_else(|| Error::Unsupported(fspec.label()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReferenceForm {
    ClosedForm,
    Numeric,
}

/// A reference solution for one function, closed-form when available.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSolution {
    pub fspec: FunctionSpec,
    pub form: ReferenceForm,
}

impl ReferenceSolution {
    pub fn new(fspec: FunctionSpec) -> Self {
        let form = if fspec.has_closed_form_antiderivative() {
            ReferenceForm::ClosedForm
        } else {
            ReferenceForm::Numeric
        };
        Self { fspec, form }
    }

    /// Values on an ascending mesh; the numeric form integrates at the
    /// tightest tolerance the baseline accepts.
    pub fn on_mesh(&self, mesh: &[f64]) -> Result<Vec<f64>> {
        match self.form {
            ReferenceForm::ClosedForm => mesh.iter().map(|&t| reference_solution(&self.fspec, t)).collect(),
            ReferenceForm::Numeric => {
                Ok(rk_baseline(&self.fspec, mesh, MIN_RK_TOLERANCE, MIN_RK_TOLERANCE)?.values)
            }
        }
    }
}

/// Output of [`rk_baseline`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RkOutput {
    pub values: Vec<f64>,
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Whether a requested tolerance was raised to [`MIN_RK_TOLERANCE`].
    pub clamped: bool,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// fifth-order weights minus embedded fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrates `y' = f(t) y`, `y(0) = 1` with Dormand–Prince 5(4), landing
/// exactly on every mesh point.
pub fn rk_baseline(fspec: &FunctionSpec, mesh: &[f64], rel_tol: f64, abs_tol: f64) -> Result<RkOutput> {
    fspec.validate()?;
    for tol in [rel_tol, abs_tol] {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Config(format!("tolerance {tol} must be positive")));
        }
    }
    if mesh.first().is_some_and(|&t| t < 0.0) || mesh.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(Error::Domain("mesh must be ascending and start at t >= 0".into()));
    }
    let rtol = rel_tol.max(MIN_RK_TOLERANCE);
    let atol = abs_tol.max(MIN_RK_TOLERANCE);
    let clamped = rtol != rel_tol || atol != abs_tol;

    let rhs = |t: f64, y: f64| -> Result<f64> {
        let v = fspec.eval(t);
        if v.is_finite() {
            Ok(v * y)
        } else {
            Err(Error::NonFinite { t, value: v })
        }
    };

    let mut values = Vec::with_capacity(mesh.len());
    let (mut t, mut y) = (0.0f64, 1.0f64);
    let mut k1 = rhs(t, y)?;
    let mut h = initial_step(fspec, rtol, atol, mesh.last().copied().unwrap_or(0.0));
    let (mut accepted, mut rejected) = (0, 0);
    for &target in mesh {
        while t < target {
            if accepted + rejected > MAX_STEPS {
                return Err(Error::IntegrationFailure {
                    t,
                    step: h,
                    last_value: y,
                });
            }
            let landing = t + h >= target;
            let step = if landing { target - t } else { h };
            if step <= 16.0 * f64::EPSILON * t.abs().max(1.0) && !landing {
                return Err(Error::IntegrationFailure {
                    t,
                    step,
                    last_value: y,
                });
            }
            let mut k = [0.0; 7];
            k[0] = k1;
            for s in 1..7 {
                let ys = y + step * (0..s).map(|j| A[s][j] * k[j]).sum::<f64>();
                k[s] = rhs(t + C[s] * step, ys)?;
            }
            let y_new = y + step * (0..6).map(|j| A[6][j] * k[j]).sum::<f64>();
            let err_est = step * (0..7).map(|j| E[j] * k[j]).sum::<f64>();
            let scale = atol + rtol * y.abs().max(y_new.abs());
            let err = (err_est / scale).abs();
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            if err <= 1.0 {
                accepted += 1;
                t = if landing { target } else { t + step };
                y = y_new;
                k1 = k[6];
                // a short landing step says nothing about the natural size
                if !landing || step >= h {
                    h = step * factor;
                }
            } else {
                rejected += 1;
                h = step * factor.min(1.0);
            }
        }
        values.push(y);
    }
    Ok(RkOutput {
        values,
        rel_tol: rtol,
        abs_tol: atol,
        clamped,
        accepted_steps: accepted,
        rejected_steps: rejected,
    })
}

fn initial_step(fspec: &FunctionSpec, rtol: f64, atol: f64, span: f64) -> f64 {
    let f0 = fspec.eval(0.0).abs();
    let scale = atol + rtol;
    let h = if f0 > 0.0 {
        0.01 * scale.powf(0.2) / f0
    } else {
        1e-3
    };
    h.min(span.max(1e-3)).max(1e-6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn mesh(n: usize) -> Vec<f64> {
        (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn closed_forms() {
        let e = reference_solution(&FunctionSpec::Constant { value: 1.0 }, 1.0).unwrap();
        assert_abs_diff_eq!(e, std::f64::consts::E, epsilon = 1e-15);
        assert_eq!(reference_solution(&FunctionSpec::Cos, 0.0).unwrap(), 1.0);
        let l = reference_solution(&FunctionSpec::Log1p, 1.0).unwrap();
        assert_abs_diff_eq!(l, 4.0 / std::f64::consts::E, epsilon = 1e-15);
        let sampled = FunctionSpec::sample(f64::sin, 8, 1.0).unwrap();
        assert!(matches!(
            reference_solution(&sampled, 0.5),
            Err(Error::Unsupported(_))
        ));
        assert!(reference_solution(&FunctionSpec::Cos, -0.1).is_err());
    }

    #[test]
    fn rk_zero_function_stays_one() {
        let out = rk_baseline(&FunctionSpec::zero(), &mesh(11), 1e-12, 1e-12).unwrap();
        assert!(out.values.iter().all(|&v| v == 1.0));
        assert!(!out.clamped);
    }

    #[test]
    fn rk_tracks_closed_forms() {
        let m = mesh(100);
        for (_, f) in FunctionSpec::catalog() {
            let out = rk_baseline(&f, &m, 1e-12, 1e-12).unwrap();
            for (&t, &y) in m.iter().zip(&out.values) {
                let r = reference_solution(&f, t).unwrap();
                assert!(((y - r) / r).abs() <= 1e-10, "{} at {t}", f.label());
            }
        }
    }

    #[test]
    fn tight_tolerance_is_clamped_and_recorded() {
        let out = rk_baseline(&FunctionSpec::Cos, &mesh(5), f64::EPSILON, f64::EPSILON).unwrap();
        assert!(out.clamped);
        assert_eq!(out.rel_tol, MIN_RK_TOLERANCE);
        assert!(rk_baseline(&FunctionSpec::Cos, &mesh(5), 0.0, 1e-10).is_err());
        assert!(rk_baseline(&FunctionSpec::Cos, &[0.5, 0.2], 1e-10, 1e-10).is_err());
    }

    #[test]
    fn numeric_reference_falls_back_to_rk() {
        let f = FunctionSpec::sample(|t| 2.0 * t, 6, 1.0).unwrap();
        let r = ReferenceSolution::new(f);
        assert_eq!(r.form, ReferenceForm::Numeric);
        let v = r.on_mesh(&[0.0, 1.0]).unwrap();
        assert_abs_diff_eq!(v[1], 1f64.exp(), epsilon = 1e-11);
    }
}
