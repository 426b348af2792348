//! Eigenvalues of a dense real nonsymmetric matrix.
//!
//! Balancing, Householder reduction to upper Hessenberg form, then the
//! Francis double-shift QR iteration. Eigenvectors are not formed.

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};

const MAX_ITERATIONS_PER_EIGENVALUE: usize = 60;

/// Row-major scratch copy used by the reductions.
struct Work {
    n: usize,
    a: Vec<f64>,
}

impl Work {
    fn from_matrix(m: &DMatrix<f64>) -> Self {
        let n = m.nrows();
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] = m[(i, j)];
            }
        }
        Self { n, a }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    #[inline]
    fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.a[i * self.n + j]
    }

    /// Diagonal similarity scaling by powers of two so that row and column
    /// norms are comparable.
    fn balance(&mut self) {
        const RADIX: f64 = 2.0;
        let sqrdx = RADIX * RADIX;
        let n = self.n;
        let mut done = false;
        while !done {
            done = true;
            for i in 0..n {
                let mut r = 0.0;
                let mut c = 0.0;
                for j in 0..n {
                    if j != i {
                        c += self.at(j, i).abs();
                        r += self.at(i, j).abs();
                    }
                }
                if c == 0.0 || r == 0.0 {
                    continue;
                }
                let s = c + r;
                let mut f = 1.0;
                let mut g = r / RADIX;
                while c < g {
                    f *= RADIX;
                    c *= sqrdx;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 0..n {
                        *self.at_mut(i, j) *= g;
                    }
                    for j in 0..n {
                        *self.at_mut(j, i) *= f;
                    }
                }
            }
        }
    }

    fn reduce_to_hessenberg(&mut self) {
        let n = self.n;
        if n < 3 {
            return;
        }
        let mut v = vec![0.0; n];
        for k in 0..n - 2 {
            let alpha_norm = (k + 1..n).map(|i| self.at(i, k).powi(2)).sum::<f64>().sqrt();
            if alpha_norm == 0.0 {
                continue;
            }
            let x0 = self.at(k + 1, k);
            let alpha = if x0 >= 0.0 { -alpha_norm } else { alpha_norm };
            for i in k + 1..n {
                v[i] = self.at(i, k);
            }
            v[k + 1] -= alpha;
            let vnorm2: f64 = (k + 1..n).map(|i| v[i] * v[i]).sum();
            if vnorm2 == 0.0 {
                continue;
            }
            let beta = 2.0 / vnorm2;
            // A <- H A
            for j in k..n {
                let s: f64 = (k + 1..n).map(|i| v[i] * self.at(i, j)).sum();
                let s = beta * s;
                for i in k + 1..n {
                    *self.at_mut(i, j) -= s * v[i];
                }
            }
            // A <- A H
            for i in 0..n {
                let s: f64 = (k + 1..n).map(|j| self.at(i, j) * v[j]).sum();
                let s = beta * s;
                for j in k + 1..n {
                    *self.at_mut(i, j) -= s * v[j];
                }
            }
            for i in k + 2..n {
                *self.at_mut(i, k) = 0.0;
            }
        }
    }

    /// Francis double-shift QR on an upper Hessenberg matrix.
    fn hessenberg_eigenvalues(&mut self) -> Result<Vec<Complex<f64>>> {
        let n = self.n;
        let mut wr = vec![0.0; n];
        let mut wi = vec![0.0; n];
        let mut anorm = 0.0;
        for i in 0..n {
            for j in i.saturating_sub(1)..n {
                anorm += self.at(i, j).abs();
            }
        }
        let mut nn = n as isize - 1;
        let mut shift_total = 0.0;
        while nn >= 0 {
            let mut its = 0;
            loop {
                let nu = nn as usize;
                let mut l = nu;
                while l >= 1 {
                    let mut s = self.at(l - 1, l - 1).abs() + self.at(l, l).abs();
                    if s == 0.0 {
                        s = anorm;
                    }
                    if self.at(l, l - 1).abs() + s == s {
                        *self.at_mut(l, l - 1) = 0.0;
                        break;
                    }
                    l -= 1;
                }
                let mut x = self.at(nu, nu);
                if l == nu {
                    wr[nu] = x + shift_total;
                    wi[nu] = 0.0;
                    nn -= 1;
                    break;
                }
                let mut y = self.at(nu - 1, nu - 1);
                let mut w = self.at(nu, nu - 1) * self.at(nu - 1, nu);
                if l == nu - 1 {
                    let p = 0.5 * (y - x);
                    let q = p * p + w;
                    let z = q.abs().sqrt();
                    x += shift_total;
                    if q >= 0.0 {
                        let z = p + z.copysign(p);
                        wr[nu - 1] = x + z;
                        wr[nu] = if z != 0.0 { x - w / z } else { x + z };
                        wi[nu - 1] = 0.0;
                        wi[nu] = 0.0;
                    } else {
                        wr[nu - 1] = x + p;
                        wr[nu] = x + p;
                        wi[nu - 1] = -z;
                        wi[nu] = z;
                    }
                    nn -= 2;
                    break;
                }
                if its == MAX_ITERATIONS_PER_EIGENVALUE {
                    return Err(Error::NoConvergence {
                        routine: "Hessenberg QR",
                        iterations: its,
                    });
                }
                if its > 0 && its % 10 == 0 {
                    // exceptional shift
                    shift_total += x;
                    for i in 0..=nu {
                        *self.at_mut(i, i) -= x;
                    }
                    let s = self.at(nu, nu - 1).abs() + self.at(nu - 1, nu - 2).abs();
                    x = 0.75 * s;
                    y = x;
                    w = -0.4375 * s * s;
                }
                its += 1;
                self.double_shift_step(l, nu, x, y, w);
            }
        }
        Ok(wr
            .into_iter()
            .zip(wi)
            .map(|(re, im)| Complex::new(re, im))
            .collect())
    }

    fn double_shift_step(&mut self, l: usize, nn: usize, x: f64, y: f64, w: f64) {
        let (mut p, mut q, mut r);
        let mut m = nn - 2;
        loop {
            let z = self.at(m, m);
            let rr = x - z;
            let s = y - z;
            p = (rr * s - w) / self.at(m + 1, m) + self.at(m, m + 1);
            q = self.at(m + 1, m + 1) - z - rr - s;
            r = self.at(m + 2, m + 1);
            let s = p.abs() + q.abs() + r.abs();
            p /= s;
            q /= s;
            r /= s;
            if m == l {
                break;
            }
            let u = self.at(m, m - 1).abs() * (q.abs() + r.abs());
            let v = p.abs() * (self.at(m - 1, m - 1).abs() + z.abs() + self.at(m + 1, m + 1).abs());
            if u + v == v {
                break;
            }
            m -= 1;
        }
        for i in m + 2..=nn {
            *self.at_mut(i, i - 2) = 0.0;
            if i != m + 2 {
                *self.at_mut(i, i - 3) = 0.0;
            }
        }
        let mut k = m;
        while k < nn {
            let mut xk = 0.0;
            if k != m {
                p = self.at(k, k - 1);
                q = self.at(k + 1, k - 1);
                r = if k != nn - 1 { self.at(k + 2, k - 1) } else { 0.0 };
                xk = p.abs() + q.abs() + r.abs();
                if xk != 0.0 {
                    p /= xk;
                    q /= xk;
                    r /= xk;
                }
            }
            let s = (p * p + q * q + r * r).sqrt().copysign(p);
            if s != 0.0 {
                if k == m {
                    if l != m {
                        let v = self.at(k, k - 1);
                        *self.at_mut(k, k - 1) = -v;
                    }
                } else {
                    *self.at_mut(k, k - 1) = -s * xk;
                }
                p += s;
                let xx = p / s;
                let yy = q / s;
                let zz = r / s;
                q /= p;
                r /= p;
                for j in k..=nn {
                    let mut pp = self.at(k, j) + q * self.at(k + 1, j);
                    if k != nn - 1 {
                        pp += r * self.at(k + 2, j);
                        *self.at_mut(k + 2, j) -= pp * zz;
                    }
                    *self.at_mut(k + 1, j) -= pp * yy;
                    *self.at_mut(k, j) -= pp * xx;
                }
                let mmin = if nn < k + 3 { nn } else { k + 3 };
                for i in l..=mmin {
                    let mut pp = xx * self.at(i, k) + yy * self.at(i, k + 1);
                    if k != nn - 1 {
                        pp += zz * self.at(i, k + 2);
                        *self.at_mut(i, k + 2) -= pp * r;
                    }
                    *self.at_mut(i, k + 1) -= pp * q;
                    *self.at_mut(i, k) -= pp;
                }
            }
            k += 1;
        }
    }
}

/// All eigenvalues of a square matrix, in no particular order.
pub fn eigenvalues(m: &DMatrix<f64>) -> Result<Vec<Complex<f64>>> {
    assert!(m.is_square(), "eigenvalues need a square matrix");
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut work = Work::from_matrix(m);
    work.balance();
    work.reduce_to_hessenberg();
    work.hessenberg_eigenvalues()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sorted_by_re_im(mut v: Vec<Complex<f64>>) -> Vec<Complex<f64>> {
        v.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap()
                .then(a.im.partial_cmp(&b.im).unwrap())
        });
        v
    }

    #[test]
    fn diagonal_and_triangular() {
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![0.3, -0.7, 2.0]));
        let ev = sorted_by_re_im(eigenvalues(&d).unwrap());
        assert_abs_diff_eq!(ev[0].re, -0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(ev[2].re, 2.0, epsilon = 1e-15);
        let t = DMatrix::from_row_slice(3, 3, &[1.0, 5.0, -2.0, 0.0, 3.0, 7.0, 0.0, 0.0, -4.0]);
        let ev = sorted_by_re_im(eigenvalues(&t).unwrap());
        assert_abs_diff_eq!(ev[0].re, -4.0, epsilon = 1e-13);
        assert_abs_diff_eq!(ev[1].re, 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(ev[2].re, 3.0, epsilon = 1e-13);
    }

    #[test]
    fn rotation_has_complex_pair() {
        let r = DMatrix::from_row_slice(2, 2, &[0.0, -2.0, 2.0, 0.0]);
        let ev = sorted_by_re_im(eigenvalues(&r).unwrap());
        assert_abs_diff_eq!(ev[0].im, -2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ev[1].im, 2.0, epsilon = 1e-15);
    }

    #[test]
    fn companion_matrix_roots() {
        // x^4 - 10x^3 + 35x^2 - 50x + 24 = (x-1)(x-2)(x-3)(x-4)
        let c = DMatrix::from_row_slice(
            4,
            4,
            &[
                10.0, -35.0, 50.0, -24.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0,
            ],
        );
        let ev = sorted_by_re_im(eigenvalues(&c).unwrap());
        for (k, e) in ev.iter().enumerate() {
            assert_abs_diff_eq!(e.re, (k + 1) as f64, epsilon = 1e-10);
            assert_abs_diff_eq!(e.im, 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn trace_and_determinant_preserved_for_random_matrix() {
        let n = 30;
        let mut state = 12345u64;
        let m = DMatrix::from_fn(n, n, |_, _| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        });
        let ev = eigenvalues(&m).unwrap();
        let trace: f64 = ev.iter().map(|e| e.re).sum();
        assert_abs_diff_eq!(trace, m.trace(), epsilon = 1e-11);
        let det = ev.iter().fold(Complex::new(1.0, 0.0), |acc, e| acc * e);
        assert_abs_diff_eq!(
            det.re,
            m.determinant(),
            epsilon = 1e-9 * m.determinant().abs().max(1.0)
        );
        assert_abs_diff_eq!(det.im, 0.0, epsilon = 1e-9 * m.determinant().abs().max(1.0));
    }

    #[test]
    fn zero_matrix() {
        let ev = eigenvalues(&DMatrix::zeros(5, 5)).unwrap();
        assert_eq!(ev.len(), 5);
        assert!(ev.iter().all(|e| e.norm() == 0.0));
    }
}
