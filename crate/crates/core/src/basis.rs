//! Shifted orthonormal Legendre polynomials on `[0, T]`.
//!
//! The basis functions are
//!
//! ```text
//! p_k(t) = sqrt((2k + 1) / T) * P_k(2t/T - 1)
//! ```
//!
//! where `P_k` is the standard Legendre polynomial on `[-1, 1]`. Values are
//! always produced by the three-term recurrence, never from monomial
//! coefficients, so evaluation stays stable for orders in the hundreds.

use std::ops::Deref;

use crate::error::{Error, Result};

/// Standard Legendre polynomials `P_0(x), ..., P_{n-1}(x)`.
pub fn legendre_values(n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    out.push(1.0);
    if n == 1 {
        return out;
    }
    out.push(x);
    for k in 1..n - 1 {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * out[k] - kf * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    out
}

/// `P_n(x)` and `P_n'(x)` for `|x| < 1`.
pub(crate) fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = next;
    }
    let nf = n as f64;
    (p, nf * (x * p - p_prev) / (x * x - 1.0))
}

/// The first `order` shifted orthonormal Legendre polynomials on `[0, T]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Basis {
    order: usize,
    interval_end: f64,
}

impl Basis {
    pub fn new(order: usize, interval_end: f64) -> Result<Self> {
        if order == 0 {
            return Err(Error::Domain("basis order must be at least 1".into()));
        }
        if !(interval_end > 0.0 && interval_end.is_finite()) {
            return Err(Error::Domain(format!(
                "interval end must be positive and finite, got {interval_end}"
            )));
        }
        Ok(Self { order, interval_end })
    }

    /// Basis of the given order on `[0, 1]`.
    pub fn unit(order: usize) -> Result<Self> {
        Self::new(order, 1.0)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn interval_end(&self) -> f64 {
        self.interval_end
    }

    /// `sqrt((2k + 1) / T)`, the factor turning `P_k` into `p_k`.
    pub fn normalization(&self, k: usize) -> f64 {
        ((2 * k + 1) as f64 / self.interval_end).sqrt()
    }

    /// Maps `t` in `[0, T]` to `x` in `[-1, 1]`.
    pub fn to_reference(&self, t: f64) -> f64 {
        2.0 * t / self.interval_end - 1.0
    }

    fn check_point(&self, t: f64) -> Result<()> {
        if !(0.0..=self.interval_end).contains(&t) {
            return Err(Error::Domain(format!(
                "t = {t} outside [0, {}]",
                self.interval_end
            )));
        }
        Ok(())
    }

    /// `(p_0(t), ..., p_{M-1}(t))`.
    pub fn eval(&self, t: f64) -> Result<BasisVector> {
        self.check_point(t)?;
        Ok(self.eval_unchecked(self.order, t))
    }

    /// Values of the first `n` basis functions, `n` possibly larger than the order.
    pub(crate) fn eval_unchecked(&self, n: usize, t: f64) -> BasisVector {
        let mut values = legendre_values(n, self.to_reference(t));
        for (k, v) in values.iter_mut().enumerate() {
            *v *= self.normalization(k);
        }
        BasisVector(values)
    }

    /// `Q_l(t) = integral of p_l over [0, t]` for `l < M`.
    ///
    /// Uses `integral_{-1}^{x} P_l = (P_{l+1}(x) - P_{l-1}(x)) / (2l + 1)` for
    /// `l >= 1` and `x + 1` for `l = 0`.
    pub fn eval_antiderivatives(&self, t: f64) -> Result<BasisVector> {
        self.check_point(t)?;
        Ok(self.antiderivatives_unchecked(t))
    }

    pub(crate) fn antiderivatives_unchecked(&self, t: f64) -> BasisVector {
        let m = self.order;
        let x = self.to_reference(t);
        let p = legendre_values(m + 1, x);
        let half_t = 0.5 * self.interval_end;
        let values = (0..m)
            .map(|l| {
                let integral = if l == 0 {
                    x + 1.0
                } else {
                    (p[l + 1] - p[l - 1]) / (2 * l + 1) as f64
                };
                self.normalization(l) * half_t * integral
            })
            .collect();
        BasisVector(values)
    }

    /// `p_k(0) = (-1)^k sqrt((2k+1)/T)`.
    pub fn value_at_start(&self, k: usize) -> f64 {
        if k.is_multiple_of(2) {
            self.normalization(k)
        } else {
            -self.normalization(k)
        }
    }

    /// `p_k(T) = sqrt((2k+1)/T)`.
    pub fn value_at_end(&self, k: usize) -> f64 {
        self.normalization(k)
    }

    /// `phi_M(0)`, built from the closed-form endpoint values.
    pub fn start_vector(&self) -> BasisVector {
        BasisVector((0..self.order).map(|k| self.value_at_start(k)).collect())
    }

    /// Diagonal entry of the Jacobi matrix of multiplication by `t`.
    pub fn jacobi_diagonal(&self) -> f64 {
        0.5 * self.interval_end
    }

    /// Off-diagonal entry `beta_k` coupling `p_{k-1}` and `p_k` in
    /// `t p_k = beta_{k+1} p_{k+1} + (T/2) p_k + beta_k p_{k-1}`.
    pub fn jacobi_offdiagonal(&self, k: usize) -> f64 {
        if k == 0 {
            return 0.0;
        }
        let kf = k as f64;
        0.5 * self.interval_end * kf / (4.0 * kf * kf - 1.0).sqrt()
    }
}

/// Values of all basis functions at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisVector(Vec<f64>);

impl BasisVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn dot(&self, other: &[f64]) -> f64 {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }
}

impl Deref for BasisVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for BasisVector {
    fn from(values: Vec<f64>) -> Self {
        Self(values)
    }
}
