//! Small dense complex square matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};
// inherent float methods shadow these when std is linked (tests)
#[allow(unused_imports)]
use num_traits::Float;

pub type C64 = Complex64;

/// Row-major dense complex square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from nested rows, rejecting ragged or non-square input.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Shape {
                    expected: n,
                    rows: n,
                    cols: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { n, data })
    }

    /// Builds a matrix from a flat row-major buffer of length `n * n`.
    pub fn from_vec(n: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Shape {
                expected: n,
                rows: n,
                cols: data.len().checked_div(n).unwrap_or(0),
            });
        }
        Ok(Self { n, data })
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    /// The rank-one matrix `|u><v|`.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        let n = u.len();
        debug_assert_eq!(n, v.len());
        let mut m = Self::zeros(n);
        for (a, ua) in u.iter().enumerate() {
            for (b, vb) in v.iter().enumerate() {
                m[(a, b)] = ua * vb.conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.data[r * self.n..(r + 1) * self.n]
    }

    pub fn trace(&self) -> C64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.n);
        for a in 0..self.n {
            for b in 0..self.n {
                m[(b, a)] = self[(a, b)].conj();
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for a in 0..n {
            for k in 0..n {
                let x = self[(a, k)];
                if x.re == 0.0 && x.im == 0.0 {
                    continue;
                }
                for b in 0..n {
                    out.data[a * n + b] += x * other.data[k * n + b];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        (0..self.n)
            .map(|a| self.row(a).iter().zip(v).map(|(x, y)| x * y).sum())
            .collect()
    }

    /// Kronecker product `self ⊗ other`; `other` indexes the fast-varying digit.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.n, other.n);
        let mut out = Self::zeros(n * m);
        for a in 0..n {
            for b in 0..n {
                let x = self[(a, b)];
                for c in 0..m {
                    for d in 0..m {
                        out[(a * m + c, b * m + d)] = x * other[(c, d)];
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(x, y)| x - y).collect(),
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `M - M†`.
    pub fn hermitian_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in 0..self.n {
            for b in a..self.n {
                worst = worst.max((self[(a, b)] - self[(b, a)].conj()).norm());
            }
        }
        worst
    }

    /// `(M + M†) / 2`, with an exactly real diagonal.
    pub fn hermitian_part(&self) -> Self {
        let mut m = Self::zeros(self.n);
        for a in 0..self.n {
            for b in 0..self.n {
                m[(a, b)] = (self[(a, b)] + self[(b, a)].conj()) * 0.5;
            }
            m[(a, a)].im = 0.0;
        }
        m
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<v| M |v>`.
    pub fn expectation(&self, v: &[C64]) -> C64 {
        let mv = self.mul_vec(v);
        v.iter().zip(&mv).map(|(x, y)| x.conj() * y).sum()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.n + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.n + c]
    }
}
