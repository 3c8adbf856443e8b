//! Dense linear algebra kernels: a square complex matrix type, the
//! implicit-shift QL eigensolver for symmetric tridiagonal matrices, and
//! Hermitian eigenvalues via the real symmetric embedding.

use crate::{C64, Error, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
// no_std builds take f64 math from the Float trait; under `cargo test`
// std is linked and its inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    n: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        CMat {
            n,
            data: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Largest absolute deviation from Hermiticity.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// tr(A^2) for Hermitian `A`; used for purity checks.
    pub fn trace_of_square(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                acc += (self[(i, j)] * self[(j, i)]).re;
            }
        }
        acc
    }
}

impl core::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.n + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.n + j]
    }
}

/// Eigendecomposition of a symmetric tridiagonal matrix.
///
/// `values` ascending; `vectors[j]` is the unit eigenvector of `values[j]`.
#[derive(Debug, Clone)]
pub struct TridiagonalEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

/// Full eigensystem of the symmetric tridiagonal matrix with diagonal
/// `diag` and off-diagonal `offdiag` (`offdiag.len() == diag.len() - 1`),
/// by the QL algorithm with implicit shifts.
pub fn tridiagonal_eigen(diag: &[f64], offdiag: &[f64]) -> Result<TridiagonalEigen> {
    let n = diag.len();
    assert_eq!(offdiag.len() + 1, n, "off-diagonal length must be n - 1");
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    // vectors[i] accumulates the i-th eigenvector as a row
    let mut vecs = vec![vec![0.0f64; n]; n];
    for (i, v) in vecs.iter_mut().enumerate() {
        v[i] = 1.0;
    }

    for l in 0..n {
        let mut iter = 0;
        loop {
            // look for a negligible off-diagonal element
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::Numerical(format!(
                    "QL failed to converge for eigenvalue {l} of a {n}x{n} block"
                )));
            }
            // implicit shift from the top 2x2
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // deflate without finishing the sweep
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let (lo, hi) = vecs.split_at_mut(i + 1);
                let (vi, vi1) = (&mut lo[i], &mut hi[0]);
                for k in 0..n {
                    f = vi1[k];
                    vi1[k] = s * vi[k] + c * f;
                    vi[k] = c * vi[k] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    // sort ascending
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).expect("eigenvalue is NaN"));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let mut vectors = Vec::with_capacity(n);
    for &i in &order {
        vectors.push(core::mem::take(&mut vecs[i]));
    }
    Ok(TridiagonalEigen { values, vectors })
}

/// Eigenvalues (ascending) of a Hermitian matrix.
///
/// Embeds `A = X + iY` into the real symmetric matrix `[[X, -Y], [Y, X]]`,
/// whose spectrum is that of `A` with every eigenvalue doubled, then
/// reduces to tridiagonal form (Householder) and applies QL.
pub fn hermitian_eigenvalues(a: &CMat) -> Result<Vec<f64>> {
    let n = a.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let m = 2 * n;
    let mut s = vec![0.0f64; m * m];
    for i in 0..n {
        for j in 0..n {
            let v = a[(i, j)];
            s[i * m + j] = v.re;
            s[(i + n) * m + (j + n)] = v.re;
            s[i * m + (j + n)] = -v.im;
            s[(i + n) * m + j] = v.im;
        }
    }
    let (d, e) = householder_tridiagonalize(&mut s, m);
    let mut eig = tridiagonal_values(&d, &e)?;
    eig.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalue is NaN"));
    // doubled spectrum: take every other entry
    Ok(eig.into_iter().step_by(2).collect())
}

/// Householder reduction of a real symmetric matrix (row-major, `n x n`,
/// destroyed in place) to tridiagonal form; returns (diagonal, off-diagonal).
fn householder_tridiagonalize(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let mut scale = 0.0;
            for k in 0..=l {
                scale += a[i * n + k].abs();
            }
            if scale == 0.0 {
                e[i] = a[i * n + l];
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let mut f = a[i * n + l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                f = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j * n + k] * a[i * n + k];
                    }
                    for k in (j + 1)..=l {
                        g += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g / h;
                    f += e[j] * a[i * n + j];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    for i in 0..n {
        d[i] = a[i * n + i];
    }
    let off = e[1..].to_vec();
    (d, off)
}

/// Eigenvalues of a symmetric tridiagonal matrix (QL, no vectors).
fn tridiagonal_values(diag: &[f64], offdiag: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::Numerical(format!(
                    "QL (values only) failed to converge at index {l}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(d)
}
