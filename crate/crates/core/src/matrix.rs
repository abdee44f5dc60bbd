//! Small dense complex matrices.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// A 2×2 complex matrix, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat2<R: Real>(pub [[Scalar<R>; 2]; 2]);

impl<R: Real> Mat2<R> {
    pub fn new(a: Scalar<R>, b: Scalar<R>, c: Scalar<R>, d: Scalar<R>) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        Self::new(Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one())
    }

    pub fn det(&self) -> Scalar<R> {
        let [[a, b], [c, d]] = &self.0;
        a.clone() * d.clone() - b.clone() * c.clone()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let e = |r: usize, c: usize| {
            self.0[r][0].clone() * other.0[0][c].clone()
                + self.0[r][1].clone() * other.0[1][c].clone()
        };
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let [[a, b], [c, d]] = &self.0;
        Ok(Self::new(
            d.clone() / det.clone(),
            -b.clone() / det.clone(),
            -c.clone() / det.clone(),
            a.clone() / det,
        ))
    }

    /// Applies the matrix to a column vector `(x, y)`.
    pub fn apply(&self, x: &Scalar<R>, y: &Scalar<R>) -> (Scalar<R>, Scalar<R>) {
        (
            self.0[0][0].clone() * x.clone() + self.0[0][1].clone() * y.clone(),
            self.0[1][0].clone() * x.clone() + self.0[1][1].clone() * y.clone(),
        )
    }
}

/// A square complex matrix of arbitrary dimension, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<R: Real> {
    dim: usize,
    data: Vec<Scalar<R>>,
}

impl<R: Real> SquareMatrix<R> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Scalar::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar<R>>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "matrix with {dim} rows is not square"
            )));
        }
        Ok(Self {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar<R> {
        &self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar<R>) {
        self.data[r * self.dim + c] = value;
    }

    pub fn entries(&self) -> &[Scalar<R>] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<Scalar<R>>> {
        self.data
            .chunks(self.dim.max(1))
            .map(<[_]>::to_vec)
            .collect()
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.dim, self.dim, other.dim, other.dim
            )));
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = Scalar::zero();
                for k in 0..n {
                    acc = acc + self.get(r, k).clone() * other.get(k, c).clone();
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar<R>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} minus {}x{}",
                self.dim, self.dim, other.dim, other.dim
            )));
        }
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }
}
