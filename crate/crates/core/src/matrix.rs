//! Dense square complex matrices.
//!
//! The sizes in this crate are tiny (2, 3, 4, 8), so a flat row-major `Vec` is plenty.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Shorthand for a complex literal.
pub const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Build from rows; panics if the rows do not form a square.
    pub fn from_rows<R: AsRef<[Complex64]>>(rows: &[R]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), n, "matrix rows must form a square");
            data.extend_from_slice(r);
        }
        Self { n, data }
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), n, "matrix rows must form a square");
            data.extend(r.iter().map(|&x| c(x, 0.0)));
        }
        Self { n, data }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// 2x2 shorthand, row-major.
    pub fn m2(a: Complex64, b: Complex64, c_: Complex64, d: Complex64) -> Self {
        Self {
            n: 2,
            data: vec![a, b, c_, d],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(c(s, 0.0))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, x| m.max(x.norm()))
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn max_imag(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, x| m.max(x.im.abs()))
    }

    pub fn approx_eq(&self, other: &CMatrix, tol: f64) -> bool {
        self.n == other.n && self.max_abs_diff(other) <= tol
    }

    /// Determinant by LU decomposition with partial pivoting.
    pub fn det(&self) -> Complex64 {
        match self.n {
            0 => ONE,
            1 => self.data[0],
            2 => self.data[0] * self.data[3] - self.data[1] * self.data[2],
            n => {
                let mut a = self.data.clone();
                let mut det = ONE;
                for col in 0..n {
                    let pivot = (col..n)
                        .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))
                        .unwrap();
                    if a[pivot * n + col] == ZERO {
                        return ZERO;
                    }
                    if pivot != col {
                        for k in 0..n {
                            a.swap(pivot * n + k, col * n + k);
                        }
                        det = -det;
                    }
                    let p = a[col * n + col];
                    det *= p;
                    for r in col + 1..n {
                        let f = a[r * n + col] / p;
                        for k in col..n {
                            let v = a[col * n + k];
                            a[r * n + k] -= f * v;
                        }
                    }
                }
                det
            }
        }
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<CMatrix> {
        let n = self.n;
        let scale = self.max_abs();
        if n == 2 {
            let d = self.det();
            if d.norm() <= 1e-14 * scale * scale || !d.is_finite() {
                return Err(Error::Singular);
            }
            let [a, b, c_, e] = [self.data[0], self.data[1], self.data[2], self.data[3]];
            return Ok(CMatrix::m2(e / d, -b / d, -c_ / d, a / d));
        }
        let mut a = self.data.clone();
        let mut inv = CMatrix::identity(n).data;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))
                .unwrap();
            if a[pivot * n + col].norm() <= 1e-14 * scale {
                return Err(Error::Singular);
            }
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                    inv.swap(pivot * n + k, col * n + k);
                }
            }
            let p = a[col * n + col];
            for k in 0..n {
                a[col * n + k] /= p;
                inv[col * n + k] /= p;
            }
            for r in 0..n {
                if r != col {
                    let f = a[r * n + col];
                    if f != ZERO {
                        for k in 0..n {
                            let (va, vi) = (a[col * n + k], inv[col * n + k]);
                            a[r * n + k] -= f * va;
                            inv[r * n + k] -= f * vi;
                        }
                    }
                }
            }
        }
        Ok(CMatrix { n, data: inv })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Row-vector product `v M`.
    pub fn apply_left(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|j| (0..self.n).map(|i| v[i] * self[(i, j)]).sum())
            .collect()
    }

    /// Outer product `col row`.
    pub fn outer(col: &[Complex64], row: &[Complex64]) -> CMatrix {
        assert_eq!(col.len(), row.len());
        CMatrix::from_fn(col.len(), |i, j| col[i] * row[j])
    }

    fn zip_with(&self, other: &CMatrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> CMatrix {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect(),
        }
    }
}

/// Row vector times column vector.
pub fn dot(row: &[Complex64], col: &[Complex64]) -> Complex64 {
    row.iter().zip(col).map(|(a, b)| a * b).sum()
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix dimension mismatch");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Mul for CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: CMatrix) -> CMatrix {
        &self * &rhs
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Add for CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: CMatrix) -> CMatrix {
        &self + &rhs
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Sub for CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: CMatrix) -> CMatrix {
        &self - &rhs
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale_re(-1.0)
    }
}

impl Serialize for CMatrix {
    /// Row-major nested arrays of `[re, im]` pairs.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.n)
            .map(|i| self.row(i).iter().map(|z| [z.re, z.im]).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<[f64; 2]>>::deserialize(deserializer)?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(serde::de::Error::custom("matrix rows must form a square"));
        }
        let data = rows.iter().flatten().map(|p| c(p[0], p[1])).collect();
        Ok(CMatrix { n, data })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let m = CMatrix::from_rows(&[
            [c(2.0, 1.0), c(0.0, 0.0), c(1.0, -1.0)],
            [c(0.5, 0.0), c(1.0, 2.0), c(0.0, 0.0)],
            [c(0.0, 1.0), c(3.0, 0.0), c(1.0, 0.0)],
        ]);
        // cofactor expansion along the first row
        let d = m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
            - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
            + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)]);
        assert!((m.det() - d).norm() < 1e-13);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).approx_eq(&CMatrix::identity(3), 1e-13));
        assert_eq!(CMatrix::zeros(3).inverse(), Err(Error::Singular));
    }

    #[test]
    fn serde_layout() {
        let m = CMatrix::m2(c(1.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(-1.0, 0.0));
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[[[1.0,0.0],[0.0,-1.0]],[[0.0,1.0],[-1.0,0.0]]]");
        assert_eq!(serde_json::from_str::<CMatrix>(&s).unwrap(), m);
    }
}
