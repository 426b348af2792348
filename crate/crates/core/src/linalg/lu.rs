//! LU factorization with partial pivoting restricted to a band.
//!
//! Pivoting within `kl` sub-diagonals widens the upper factor to `kl + ku`
//! super-diagonals; every loop below is clipped to that envelope. With
//! `kl = ku = n - 1` this is ordinary dense LU.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Row-major square matrix with known lower and upper bandwidths.
#[derive(Debug, Clone)]
pub struct BandMatrix {
    n: usize,
    lower: usize,
    upper: usize,
    data: Vec<f64>,
}

impl BandMatrix {
    /// Copies the entries of `a` inside the band; everything outside is dropped.
    pub fn from_dense(a: &DMatrix<f64>, lower: usize, upper: usize) -> Self {
        assert!(a.is_square(), "band matrices are square");
        let n = a.nrows();
        let lower = lower.min(n.saturating_sub(1));
        let upper = upper.min(n.saturating_sub(1));
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            let lo = i.saturating_sub(lower);
            let hi = (i + upper).min(n - 1);
            for j in lo..=hi {
                data[i * n + j] = a[(i, j)];
            }
        }
        Self {
            n,
            lower,
            upper,
            data,
        }
    }

    /// Full matrix viewed as a band matrix.
    pub fn dense(a: &DMatrix<f64>) -> Self {
        let n = a.nrows();
        Self::from_dense(a, n.saturating_sub(1), n.saturating_sub(1))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn bandwidths(&self) -> (usize, usize) {
        (self.lower, self.upper)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                let lo = i.saturating_sub(self.lower);
                let hi = (i + self.upper).min(self.n - 1);
                (lo..=hi).map(|j| self.get(i, j) * x[j]).sum()
            })
            .collect()
    }

    pub fn factorize(mut self) -> Result<BandLu> {
        let n = self.n;
        let kl = self.lower;
        let ku_fill = (self.lower + self.upper).min(n.saturating_sub(1));
        let mut pivots = Vec::with_capacity(n);
        let scale = self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let tiny = scale * n as f64 * f64::EPSILON;
        let (mut max_pivot, mut min_pivot) = (0.0f64, f64::INFINITY);
        for k in 0..n {
            let last_row = (k + kl).min(n - 1);
            let mut p = k;
            for i in k + 1..=last_row {
                if self.data[i * n + k].abs() > self.data[p * n + k].abs() {
                    p = i;
                }
            }
            pivots.push(p);
            let last_col = (k + ku_fill).min(n - 1);
            if p != k {
                for j in k..=last_col {
                    self.data.swap(k * n + j, p * n + j);
                }
            }
            let pivot = self.data[k * n + k];
            max_pivot = max_pivot.max(pivot.abs());
            min_pivot = min_pivot.min(pivot.abs());
            if pivot.abs() <= tiny {
                return Err(Error::Singular {
                    pivot: k,
                    condition: if pivot == 0.0 {
                        f64::INFINITY
                    } else {
                        max_pivot / pivot.abs()
                    },
                });
            }
            for i in k + 1..=last_row {
                let l = self.data[i * n + k] / pivot;
                self.data[i * n + k] = l;
                if l != 0.0 {
                    for j in k + 1..=last_col {
                        self.data[i * n + j] -= l * self.data[k * n + j];
                    }
                }
            }
        }
        Ok(BandLu {
            n,
            lower: kl,
            upper: ku_fill,
            data: self.data,
            pivots,
            pivot_ratio: max_pivot / min_pivot,
        })
    }
}

/// Packed `P A = L U` factors.
#[derive(Debug, Clone)]
pub struct BandLu {
    n: usize,
    lower: usize,
    upper: usize,
    data: Vec<f64>,
    pivots: Vec<usize>,
    pivot_ratio: f64,
}

impl BandLu {
    /// Ratio of largest to smallest pivot magnitude, a cheap conditioning hint.
    pub fn pivot_ratio(&self) -> f64 {
        self.pivot_ratio
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.n;
        assert_eq!(rhs.len(), n, "right-hand side length");
        let mut x = rhs.to_vec();
        for k in 0..n {
            x.swap(k, self.pivots[k]);
            let xk = x[k];
            if xk != 0.0 {
                for i in k + 1..=(k + self.lower).min(n - 1) {
                    x[i] -= self.data[i * n + k] * xk;
                }
            }
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..=(i + self.upper).min(n - 1) {
                s -= self.data[i * n + j] * x[j];
            }
            x[i] = s / self.data[i * n + i];
        }
        x
    }
}
