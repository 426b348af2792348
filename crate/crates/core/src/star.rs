//! The discretized ★-algebra and the ODE pipeline built on it.
//!
//! For `y' = f(t) y`, `y(0) = 1`, the solution is `Θ(t) ★ R(f)` evaluated at
//! `s = 0`, where `R(f) = δ + f + f★f + ...` is the ★-resolvent of the
//! kernel `f(t) Θ(t - s)`. In coefficients this becomes
//! `(I - F) x = φ(0)` and `u = Θ x`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::basis::Basis;
use crate::coeff::{build_coeff_matrix, build_theta_matrix, theta_entry, CoeffMatrix};
use crate::diagnostics::{
    bandwidth_of, lower_upper_bandwidth, numerical_bandwidth, Diagnostics, DiagnosticsConfig, Threshold,
};
use crate::error::{Error, Result};
use crate::function::FunctionSpec;
use crate::linalg::BandMatrix;

/// Required residual of the resolvent solve, relative to `|rhs|_inf`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-12;

const REFINEMENT_STEPS: usize = 2;

/// Matrix product `F G`, the coefficient matrix of `f ★ g` up to truncation.
///
/// Row `k` of the exact product also needs columns `j >= M` of `F`; the last
/// `b` rows, `b` the numerical bandwidth of `F`, are therefore flagged
/// through [`CoeffMatrix::unreliable_rows`].
pub fn star_product(f: &CoeffMatrix, g: &CoeffMatrix) -> Result<CoeffMatrix> {
    if f.basis() != g.basis() {
        return Err(Error::Domain(format!(
            "star product of matrices on different bases ({:?} and {:?})",
            f.basis(),
            g.basis()
        )));
    }
    let b = numerical_bandwidth(f, Threshold::default());
    let product = f.entries() * g.entries();
    Ok(CoeffMatrix::from_matrix(*f.basis(), product)?.with_unreliable_rows(b))
}

/// Which factorization [`star_resolvent_solve`] used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "path", rename_all = "lowercase")]
pub enum SolverPath {
    Banded { lower: usize, upper: usize },
    Dense,
}

/// Solution of `(I - F) x = rhs` with its residual.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolventSolution {
    pub x: Vec<f64>,
    pub residual: f64,
    pub path: SolverPath,
}

/// Solves `(I - F) x = rhs` by LU with partial pivoting, restricted to the
/// band of `I - F` when both bandwidths are below `M / 4`.
pub fn star_resolvent_solve(f: &CoeffMatrix, rhs: &[f64]) -> Result<ResolventSolution> {
    let m = f.order();
    if rhs.len() != m {
        return Err(Error::Domain(format!(
            "right-hand side has length {}, matrix order is {m}",
            rhs.len()
        )));
    }
    let a = DMatrix::identity(m, m) - f.entries();
    let cut = Threshold::default().cutoff(f.max_abs());
    let (lower, upper) = lower_upper_bandwidth(&a, cut);
    let (band, path) = if 4 * lower.max(upper) < m {
        (
            BandMatrix::from_dense(&a, lower, upper),
            SolverPath::Banded { lower, upper },
        )
    } else {
        (BandMatrix::dense(&a), SolverPath::Dense)
    };
    let lu = band.factorize()?;
    let mut x = lu.solve(rhs);
    let rhs_norm = rhs
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let residual_of = |x: &[f64]| -> Vec<f64> {
        let ax = &a * DVector::from_column_slice(x);
        ax.iter().zip(rhs).map(|(u, v)| v - u).collect()
    };
    let mut r = residual_of(&x);
    let mut res = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for _ in 0..REFINEMENT_STEPS {
        if res <= RESIDUAL_TOLERANCE * rhs_norm {
            break;
        }
        let dx = lu.solve(&r);
        for (xi, d) in x.iter_mut().zip(&dx) {
            *xi += d;
        }
        r = residual_of(&x);
        res = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    }
    if !(res <= RESIDUAL_TOLERANCE * rhs_norm) {
        return Err(Error::Singular {
            pivot: m,
            condition: lu.pivot_ratio(),
        });
    }
    Ok(ResolventSolution {
        x,
        residual: res,
        path,
    })
}

/// `sum_{j=0}^{K} F^j rhs` by repeated products with `F`.
pub fn star_neumann(f: &CoeffMatrix, rhs: &[f64], terms: usize) -> Vec<f64> {
    let mut sum = DVector::from_column_slice(rhs);
    let mut term = sum.clone();
    for _ in 0..terms {
        term = f.entries() * term;
        sum += &term;
    }
    sum.iter().copied().collect()
}

/// Knobs of [`solve_ode`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveConfig {
    /// Threshold defining the numerical bandwidth `b`.
    pub threshold: Threshold,
    /// Rows zeroed in addition to the last `b`.
    pub extra_zeroed_rows: usize,
    /// Measure spectral radius and singular values of `F`.
    pub diagnostics: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            threshold: Threshold::default(),
            extra_zeroed_rows: 0,
            diagnostics: true,
        }
    }
}

/// Coefficients of the approximate solution plus what produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    /// Coefficients of `y` in the basis.
    pub u: Vec<f64>,
    /// Resolvent solution vector.
    pub x: Vec<f64>,
    pub bandwidth_used: usize,
    pub zeroed_rows: usize,
    pub residual: f64,
    pub path: SolverPath,
    pub diagnostics: Option<Diagnostics>,
    pub basis: Basis,
}

impl SolveResult {
    /// `ŷ(t) = φ(t)ᵀ u`.
    pub fn evaluate(&self, t: f64) -> Result<f64> {
        Ok(self.basis.eval(t)?.dot(&self.u))
    }

    pub fn evaluate_many(&self, ts: &[f64]) -> Result<Vec<f64>> {
        ts.iter().map(|&t| self.evaluate(t)).collect()
    }
}

pub fn evaluate_solution(result: &SolveResult, t: f64) -> Result<f64> {
    result.evaluate(t)
}

/// Solves `y' = f(t) y`, `y(0) = 1` on `[0, T]` with `M = basis.order()`.
pub fn solve_ode(fspec: &FunctionSpec, basis: &Basis, config: &SolveConfig) -> Result<SolveResult> {
    if basis.order() < 2 {
        return Err(Error::Domain("the solver needs M >= 2".into()));
    }
    let f = build_coeff_matrix(fspec, basis)?;
    solve_with_matrix(&f, config)
}

/// Pipeline on an already built coefficient matrix:
///
/// 1. `b` = numerical bandwidth of `F`;
/// 2. zero the last `b` rows (plus `extra_zeroed_rows`);
/// 3. solve `(I - F) x = φ(0)`;
/// 4. `u = Θ x`, keeping only the coefficients whose stencil in `x` avoids
///    the zeroed rows.
///
/// `Θ` is tridiagonal, so `u_k` needs `x_{k+1}`; rows of `x` at or beyond
/// `M - z` (`z` zeroed rows) just copy `φ(0)`, and `u_k` for
/// `k >= M - z - 1` is set to zero.
pub fn solve_with_matrix(f: &CoeffMatrix, config: &SolveConfig) -> Result<SolveResult> {
    let basis = *f.basis();
    let m = basis.order();
    let b = bandwidth_of(f.entries(), config.threshold);
    let zeroed = b + config.extra_zeroed_rows;
    if m < zeroed + 2 {
        return Err(Error::Domain(format!(
            "order {m} is too small for {zeroed} zeroed rows; need M >= {}",
            zeroed + 2
        )));
    }
    let diagnostics = if config.diagnostics {
        Some(Diagnostics::measure(
            f,
            &DiagnosticsConfig {
                threshold: config.threshold,
                ..Default::default()
            },
        )?)
    } else {
        None
    };
    let f_hat = f.with_zeroed_tail(zeroed);
    let rhs = basis.start_vector();
    let sol = star_resolvent_solve(&f_hat, &rhs)?;
    let t = basis.interval_end();
    let trusted = m - zeroed - 1;
    let u: Vec<f64> = (0..m)
        .map(|k| {
            if k >= trusted {
                return 0.0;
            }
            (k.saturating_sub(1)..=k + 1)
                .map(|j| theta_entry(k, j, t) * sol.x[j])
                .sum()
        })
        .collect();
    Ok(SolveResult {
        u,
        x: sol.x,
        bandwidth_used: b,
        zeroed_rows: zeroed,
        residual: sol.residual,
        path: sol.path,
        diagnostics,
        basis,
    })
}

/// `T_M x` without truncation, the literal product of the Theta matrix.
pub fn theta_times(basis: &Basis, x: &[f64]) -> Vec<f64> {
    let theta = build_theta_matrix(basis);
    (theta.entries() * DVector::from_column_slice(x))
        .iter()
        .copied()
        .collect()
}
