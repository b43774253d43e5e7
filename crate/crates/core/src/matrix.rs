//! Small dense matrices over a generic scalar, plus `f64` linear algebra
//! (LU solve, inverse, matrix exponential).

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S> Matrix<S> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(domain("matrix data length does not match its shape"));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn as_slice(&self) -> &[S] {
        &self.data
    }
    pub fn into_vec(self) -> Vec<S> {
        self.data
    }

    pub fn map<T>(&self, f: impl FnMut(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<T, E>(&self, f: impl FnMut(&S) -> core::result::Result<T, E>) -> core::result::Result<Matrix<T>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<core::result::Result<_, _>>()?,
        })
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(domain("matrix product shape mismatch"));
        }
        let mut out = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc: Option<S> = None;
                for k in 0..self.cols {
                    let a = &self[(i, k)];
                    let b = &rhs[(k, j)];
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let p = a.clone() * b.clone();
                    acc = Some(match acc {
                        Some(s) => s + p,
                        None => p,
                    });
                }
                out.push(acc.unwrap_or_else(S::zero));
            }
        }
        Ok(Self { rows: self.rows, cols: rhs.cols, data: out })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| a - b)
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.cols {
            return Err(domain("matrix-vector shape mismatch"));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(S::zero(), |acc, k| acc + self[(i, k)].clone() * v[k].clone())
            })
            .collect())
    }

    fn zip(&self, rhs: &Self, op: impl Fn(S, S) -> S) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(domain("matrix shape mismatch"));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| op(a.clone(), b.clone()))
            .collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    /// Smallest `k ≤ n` with `selfᵏ = 0`, if the (square) matrix is nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        if !self.is_square() {
            return None;
        }
        let mut p = Matrix::identity(self.rows);
        for k in 1..=self.rows {
            p = p.matmul(self).ok()?;
            if p.is_zero() {
                return Some(k);
            }
        }
        None
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix<f64> {
    /// Max-row-sum norm.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Solves `self · X = rhs` by LU with partial pivoting.
    pub fn solve(&self, rhs: &Matrix<f64>) -> Result<Matrix<f64>> {
        let n = self.rows;
        if !self.is_square() || rhs.rows != n {
            return Err(domain("solve shape mismatch"));
        }
        let mut a = self.clone();
        let mut b = rhs.clone();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[(i, col)].abs().total_cmp(&a[(j, col)].abs()))
                .expect("non-empty range");
            if a[(pivot, col)].abs() < 1e-300 {
                return Err(Error::Evaluation("singular matrix".into()));
            }
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                }
                for j in 0..b.cols {
                    b.data.swap(pivot * b.cols + j, col * b.cols + j);
                }
            }
            for i in col + 1..n {
                let factor = a[(i, col)] / a[(col, col)];
                if factor == 0.0 {
                    continue;
                }
                for j in col..n {
                    let v = a[(col, j)];
                    a[(i, j)] -= factor * v;
                }
                for j in 0..b.cols {
                    let v = b[(col, j)];
                    b[(i, j)] -= factor * v;
                }
            }
        }
        for col in (0..n).rev() {
            for j in 0..b.cols {
                let mut s = b[(col, j)];
                for k in col + 1..n {
                    s -= a[(col, k)] * b[(k, j)];
                }
                b[(col, j)] = s / a[(col, col)];
            }
        }
        Ok(b)
    }

    pub fn inverse(&self) -> Result<Matrix<f64>> {
        self.solve(&Matrix::identity(self.rows))
    }

    /// Determinant by Gaussian elimination.
    pub fn determinant(&self) -> f64 {
        let n = self.rows;
        let mut a = self.clone();
        let mut det = 1.0;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[(i, col)].abs().total_cmp(&a[(j, col)].abs()))
                .expect("non-empty range");
            if a[(pivot, col)] == 0.0 {
                return 0.0;
            }
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            det *= a[(col, col)];
            for i in col + 1..n {
                let factor = a[(i, col)] / a[(col, col)];
                for j in col..n {
                    let v = a[(col, j)];
                    a[(i, j)] -= factor * v;
                }
            }
        }
        det
    }

    /// Matrix exponential by scaling and squaring with the diagonal
    /// Padé approximant of degree 6.
    pub fn expm(&self) -> Result<Matrix<f64>> {
        if !self.is_square() {
            return Err(domain("exponential of a non-square matrix"));
        }
        let n = self.rows;
        let norm = self.norm_inf();
        if !norm.is_finite() {
            return Err(Error::Evaluation("non-finite matrix in exponential".into()));
        }
        // scale so that ‖A / 2^s‖ ≤ 1/2
        let mut squarings = 0u32;
        let mut scaled_norm = norm;
        while scaled_norm > 0.5 {
            scaled_norm /= 2.0;
            squarings += 1;
        }
        let a = self.scale(&libm::ldexp(1.0, -(squarings as i32)));
        // c_k = (2q-k)! q! / ((2q)! k! (q-k)!), q = 6
        const C: [f64; 7] = [
            1.0,
            1.0 / 2.0,
            5.0 / 44.0,
            1.0 / 66.0,
            1.0 / 792.0,
            1.0 / 15840.0,
            1.0 / 665280.0,
        ];
        let mut num = Matrix::identity(n);
        let mut den = Matrix::identity(n);
        let mut power = Matrix::identity(n);
        for (k, c) in C.iter().enumerate().skip(1) {
            power = power.matmul(&a)?;
            let term = power.scale(c);
            num = num.add(&term)?;
            den = if k % 2 == 0 { den.add(&term)? } else { den.sub(&term)? };
        }
        let mut e = den.solve(&num)?;
        for _ in 0..squarings {
            e = e.matmul(&e)?;
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, d: &[f64]) -> Matrix<f64> {
        Matrix::from_vec(rows, cols, d.to_vec()).unwrap()
    }

    #[test]
    fn expm_of_rotation_generator() {
        let t = 1.3;
        let x = m(2, 2, &[0.0, -t, t, 0.0]);
        let e = x.expm().unwrap();
        let want = m(2, 2, &[libm::cos(t), -libm::sin(t), libm::sin(t), libm::cos(t)]);
        assert!(e.sub(&want).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn expm_of_diagonal_and_large_norm() {
        let x = m(2, 2, &[3.0, 0.0, 0.0, -2.0]);
        let e = x.expm().unwrap();
        assert!((e[(0, 0)] - libm::exp(3.0)).abs() < 1e-12 * libm::exp(3.0));
        assert!((e[(1, 1)] - libm::exp(-2.0)).abs() < 1e-15);
        assert_eq!(e[(0, 1)], 0.0);
    }

    #[test]
    fn expm_of_nilpotent_matches_series() {
        let x = m(3, 3, &[0.0, 2.0, 1.0, 0.0, 0.0, 3.0, 0.0, 0.0, 0.0]);
        let e = x.expm().unwrap();
        // I + X + X²/2, X² has only (0,2) = 6
        let want = m(3, 3, &[1.0, 2.0, 4.0, 0.0, 1.0, 3.0, 0.0, 0.0, 1.0]);
        assert!(e.sub(&want).unwrap().max_abs() < 1e-14);
        assert_eq!(x.nilpotency_index(), Some(3));
    }

    #[test]
    fn inverse_and_determinant() {
        let a = m(3, 3, &[2.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 4.0]);
        let inv = a.inverse().unwrap();
        let id = a.matmul(&inv).unwrap();
        assert!(id.sub(&Matrix::identity(3)).unwrap().max_abs() < 1e-14);
        assert!((a.determinant() - 18.0).abs() < 1e-12);
        assert!(m(2, 2, &[1.0, 2.0, 2.0, 4.0]).inverse().is_err());
    }
}
