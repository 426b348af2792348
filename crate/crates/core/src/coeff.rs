//! Coefficient matrices of kernels `f(t, s) = f~(t) Θ(t - s)` in the tensor
//! basis `p_k(t) p_l(s)`.
//!
//! The entry `(k, l)` is `∫ f~(τ) p_k(τ) Q_l(τ) dτ` with `Q_l` the
//! antiderivative of `p_l`. Since `Q_l` is a combination of `p_{l-1}`,
//! `p_l`, `p_{l+1}`, the matrix factors exactly as `F = M_f Θ` where `Θ` is
//! the tridiagonal matrix of `Θ(t - s)` extended by one row and `M_f` is the
//! matrix of multiplication by `f~`. `M_f` is assembled column by column from
//! the Legendre series of `f~` with the three-term recurrence of the basis,
//! which keeps entries far from the diagonal at the level of the series tail
//! instead of the level of quadrature roundoff.

use nalgebra::DMatrix;

use crate::basis::Basis;
use crate::error::{Error, Result};
use crate::function::{legendre_coefficients_of, FunctionSpec};
use crate::quadrature::{gauss_legendre, QuadratureConfig};

/// Dense `M x M` coefficient matrix tied to its basis. Row index `k` refers
/// to `p_k(t)`, column index `l` to `p_l(s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffMatrix {
    basis: Basis,
    entries: DMatrix<f64>,
    unreliable_rows: usize,
}

impl CoeffMatrix {
    pub fn from_matrix(basis: Basis, entries: DMatrix<f64>) -> Result<Self> {
        let m = basis.order();
        if entries.nrows() != m || entries.ncols() != m {
            return Err(Error::Domain(format!(
                "matrix is {}x{}, basis order is {m}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        Ok(Self {
            basis,
            entries,
            unreliable_rows: 0,
        })
    }

    pub fn zeros(basis: Basis) -> Self {
        let m = basis.order();
        Self {
            basis,
            entries: DMatrix::zeros(m, m),
            unreliable_rows: 0,
        }
    }

    /// Coefficient matrix of the ★-identity `δ(t - s)`.
    pub fn identity(basis: Basis) -> Self {
        let m = basis.order();
        Self {
            basis,
            entries: DMatrix::identity(m, m),
            unreliable_rows: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.basis.order()
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<f64> {
        self.entries
    }

    pub fn get(&self, k: usize, l: usize) -> f64 {
        self.entries[(k, l)]
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Number of trailing rows known to carry truncation error, set by
    /// [`crate::star::star_product`]; zero for directly built matrices.
    pub fn unreliable_rows(&self) -> usize {
        self.unreliable_rows
    }

    pub(crate) fn with_unreliable_rows(mut self, rows: usize) -> Self {
        self.unreliable_rows = rows.min(self.order());
        self
    }

    /// Copy with rows `M - count .. M` set to zero.
    pub fn with_zeroed_tail(&self, count: usize) -> Self {
        let m = self.order();
        let mut entries = self.entries.clone();
        for k in m.saturating_sub(count)..m {
            entries.row_mut(k).fill(0.0);
        }
        Self {
            basis: self.basis,
            entries,
            unreliable_rows: self.unreliable_rows.saturating_sub(count),
        }
    }

    /// Entries within `lower` sub- and `upper` super-diagonals, everything
    /// else zero.
    pub fn band(&self, lower: usize, upper: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.order(), self.order(), |k, l| {
            if (k >= l && k - l <= lower) || (l > k && l - k <= upper) {
                self.entries[(k, l)]
            } else {
                0.0
            }
        })
    }
}

/// Entry `(k, l)` of the coefficient matrix of `Θ(t - s)` on `[0, T]`, for
/// any `k, l >= 0`.
pub fn theta_entry(k: usize, l: usize, interval_end: f64) -> f64 {
    let (kf, lf) = (k as f64, l as f64);
    let half = 0.5 * interval_end;
    if k == l {
        if k == 0 {
            half
        } else {
            0.0
        }
    } else if k == l + 1 {
        half / ((2.0 * lf + 1.0) * (2.0 * lf + 3.0)).sqrt()
    } else if l == k + 1 {
        -half / ((2.0 * kf + 1.0) * (2.0 * kf + 3.0)).sqrt()
    } else {
        0.0
    }
}

/// The Theta matrix `T_M`, the coefficient matrix of `Θ(t - s)`.
pub fn build_theta_matrix(basis: &Basis) -> CoeffMatrix {
    let m = basis.order();
    let t = basis.interval_end();
    CoeffMatrix {
        basis: *basis,
        entries: DMatrix::from_fn(m, m, |k, l| theta_entry(k, l, t)),
        unreliable_rows: 0,
    }
}

/// Coefficient matrix of `f~(t) Θ(t - s)` for a described function.
pub fn build_coeff_matrix(fspec: &FunctionSpec, basis: &Basis) -> Result<CoeffMatrix> {
    let series = fspec.legendre_coefficients(basis.interval_end())?;
    Ok(from_series(&series, basis))
}

/// Coefficient matrix of `f~(t) Θ(t - s)` for an arbitrary smooth function,
/// projected onto the basis by Gauss–Legendre quadrature first.
pub fn build_coeff_matrix_from_fn<F: Fn(f64) -> f64>(
    f: F,
    basis: &Basis,
    config: &QuadratureConfig,
) -> Result<CoeffMatrix> {
    let series = legendre_coefficients_of(f, basis, config)?;
    Ok(from_series(&series, basis))
}

/// Coefficient matrix from the Legendre coefficients `a_j` of `f~`.
pub fn from_series(series: &[f64], basis: &Basis) -> CoeffMatrix {
    let m = basis.order();
    let t = basis.interval_end();
    let mf = multiplication_operator(series, basis, m + 1);
    // F = M_f Θ with Θ tridiagonal, (M + 1) x M
    let entries = DMatrix::from_fn(m, m, |k, l| {
        let lo = l.saturating_sub(1);
        (lo..=l + 1).map(|j| mf[(k, j)] * theta_entry(j, l, t)).sum()
    });
    CoeffMatrix {
        basis: *basis,
        entries,
        unreliable_rows: 0,
    }
}

/// First `M` rows and `cols` columns of the matrix of multiplication by
/// `f = sum_j a_j p_j`, i.e. `sum_j a_j p_j(J)` with `J` the Jacobi matrix.
///
/// Column `c` is built from `w_0 = e_c / sqrt(T)` and
/// `b_{j+1} w_{j+1} = (J - T/2) w_j - b_j w_{j-1}`, so `w_j = p_j(J) e_c`.
pub fn multiplication_operator(series: &[f64], basis: &Basis, cols: usize) -> DMatrix<f64> {
    let m = basis.order();
    let t = basis.interval_end();
    let degree = series.len().saturating_sub(1);
    // rows beyond this are only touched by the truncated recurrence
    let len = m.max(cols) + degree + 2;
    let beta: Vec<f64> = (0..=len).map(|k| basis.jacobi_offdiagonal(k)).collect();
    let p0 = 1.0 / t.sqrt();
    let mut out = DMatrix::zeros(m, cols);
    let mut prev = vec![0.0; len];
    let mut cur = vec![0.0; len];
    let mut next = vec![0.0; len];
    for c in 0..cols {
        prev.fill(0.0);
        cur.fill(0.0);
        cur[c] = p0;
        let mut acc = vec![0.0; m];
        let (mut lo, mut hi) = (c, c);
        for (j, &a) in series.iter().enumerate() {
            if a != 0.0 {
                for k in lo..=hi.min(m - 1) {
                    acc[k] += a * cur[k];
                }
            }
            if j == degree {
                break;
            }
            // (J - T/2) w has zero diagonal; J is symmetric tridiagonal
            let new_lo = lo.saturating_sub(1);
            let new_hi = (hi + 1).min(len - 1);
            for k in new_lo..=new_hi {
                let mut v = 0.0;
                if k > 0 {
                    v += beta[k] * cur[k - 1];
                }
                if k + 1 < len {
                    v += beta[k + 1] * cur[k + 1];
                }
                let b_prev = if j == 0 { 0.0 } else { beta[j] };
                next[k] = (v - b_prev * prev[k]) / beta[j + 1];
            }
            std::mem::swap(&mut prev, &mut cur);
            std::mem::swap(&mut cur, &mut next);
            next.fill(0.0);
            lo = new_lo;
            hi = new_hi;
        }
        for k in 0..m {
            out[(k, c)] = acc[k];
        }
    }
    out
}

/// Coefficient matrix by direct quadrature of `∫ f~ p_k Q_l` with a single
/// Gauss–Legendre rule of `order + extra_nodes` points.
///
/// Entries far from the diagonal sit at the roundoff level of the quadrature
/// sum rather than at their true size, so the numerical bandwidth of this
/// matrix is not meaningful; it serves as a cross-check of the structured
/// construction.
pub fn build_coeff_matrix_by_quadrature(
    fspec: &FunctionSpec,
    basis: &Basis,
    config: &QuadratureConfig,
) -> Result<CoeffMatrix> {
    fspec.validate()?;
    if let FunctionSpec::Sampled { nodes, .. } = fspec {
        let rule = gauss_legendre(nodes.len(), 0.0, basis.interval_end())?;
        let tol = 1e-12 * basis.interval_end();
        if rule.nodes().iter().zip(nodes).any(|(a, b)| (a - b).abs() > tol) {
            return Err(Error::Config(
                "sampled nodes do not match the quadrature rule".into(),
            ));
        }
    }
    let m = basis.order();
    let n = config.nodes_for(m);
    let rule = gauss_legendre(n, 0.0, basis.interval_end())?;
    let mut entries = DMatrix::zeros(m, m);
    for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
        let fv = fspec.eval(t);
        if !fv.is_finite() {
            return Err(Error::NonFinite { t, value: fv });
        }
        let p = basis.eval_unchecked(m, t);
        let q = basis.antiderivatives_unchecked(t);
        for l in 0..m {
            let wq = w * fv * q[l];
            for k in 0..m {
                entries[(k, l)] += wq * p[k];
            }
        }
    }
    Ok(CoeffMatrix {
        basis: *basis,
        entries,
        unreliable_rows: 0,
    })
}
