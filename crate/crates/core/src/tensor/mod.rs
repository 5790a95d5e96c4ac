//! Square matrices over a ring, leg embeddings, Yang–Baxter commutators and
//! the discrete transforms.
//!
//! Matrices are row-major. A matrix of dimension `N²` acting on `V⊗V` is
//! indexed by `i₁N + i₂`; on `V⊗V⊗V` the index is `i₁N² + i₂N + i₃`, so leg 1
//! is the most significant digit.

mod colour;
mod embed;
pub mod format;
mod linalg;
mod transform;

use std::fmt;

use thiserror::Error;

use crate::scalar::{Assignment, GaussianRational, Ring, Scalar, ScalarError, Var};

pub use colour::{ybc_colour, ColourMatrix};
pub use embed::{embed, embed_oracle, ybc_const, ybc_oracle, Leg};
pub use transform::{conjugate, partial_transpose_leg1, Transform};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {0} is not the square of a local dimension")]
    NotASquare(usize),
    #[error("matrix is not invertible (determinant is zero)")]
    NotInvertible,
    #[error("transform {0} is not defined on constant matrices")]
    UnsupportedTransform(Transform),
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("legs must be two distinct values from 1, 2, 3")]
    InvalidLegs,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, PartialEq)]
pub struct SquareMatrix<R = Scalar> {
    n: usize,
    data: Vec<R>,
}

impl<R: Ring> SquareMatrix<R> {
    /// Row-major construction; `data.len()` must be `n*n`.
    pub fn new(n: usize, data: Vec<R>) -> Result<Self, TensorError> {
        if n == 0 || data.len() != n * n {
            return Err(TensorError::DimensionMismatch { expected: n * n, found: data.len() });
        }
        Ok(SquareMatrix { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        SquareMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self, TensorError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(TensorError::DimensionMismatch { expected: n, found: row.len() });
            }
            data.extend(row);
        }
        Self::new(n, data)
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| R::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn diagonal(entries: Vec<R>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n);
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    /// The flip `P` on `V⊗V` with `dim V = local`.
    pub fn flip(local: usize) -> Self {
        let n = local * local;
        Self::from_fn(n, |r, c| {
            let (i1, i2) = (r / local, r % local);
            if c == i2 * local + i1 {
                R::one()
            } else {
                R::zero()
            }
        })
    }

    /// Permutation matrix with `M e_j = e_{perm[j]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n);
        for (j, &i) in perm.iter().enumerate() {
            m.data[i * n + j] = R::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `Some(N)` when `dim = N²`.
    pub fn local_dim(&self) -> Option<usize> {
        let r = (self.n as f64).sqrt().round() as usize;
        (r * r == self.n).then_some(r)
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        self.data[i * self.n + j] = value;
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[R]> {
        self.data.chunks(self.n)
    }

    /// `(i, j, value)` for every nonzero entry, row-major.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &R)> {
        let n = self.n;
        self.data.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(k, v)| (k / n, k % n, v))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&R) -> S) -> SquareMatrix<S> {
        SquareMatrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<S: Ring, E>(&self, f: impl FnMut(&R) -> Result<S, E>) -> Result<SquareMatrix<S>, E> {
        Ok(SquareMatrix { n: self.n, data: self.data.iter().map(f).collect::<Result<_, _>>()? })
    }

    fn check_same(&self, o: &Self) -> Result<(), TensorError> {
        if self.n != o.n {
            return Err(TensorError::DimensionMismatch { expected: self.n, found: o.n });
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, TensorError> {
        self.check_same(o)?;
        Ok(SquareMatrix { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add_ref(b)).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, TensorError> {
        self.check_same(o)?;
        Ok(SquareMatrix { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub_ref(b)).collect() })
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::neg_ref)
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|a| if a.is_zero() { R::zero() } else { c.mul_ref(a) })
    }

    /// Product skipping zero entries on both sides.
    pub fn mul(&self, o: &Self) -> Result<Self, TensorError> {
        self.check_same(o)?;
        let n = self.n;
        let mut acc: Vec<Option<R>> = vec![None; n * n];
        let right: Vec<Vec<(usize, &R)>> =
            o.rows().map(|row| row.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()).collect();
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for &(j, b) in &right[k] {
                    let p = a.mul_ref(b);
                    let slot = &mut acc[i * n + j];
                    *slot = Some(match slot.take() {
                        Some(s) => s.add_ref(&p),
                        None => p,
                    });
                }
            }
        }
        Ok(SquareMatrix { n, data: acc.into_iter().map(|v| v.unwrap_or_else(R::zero)).collect() })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Self) -> Self {
        let (n, m) = (self.n, o.n);
        Self::from_fn(n * m, |r, c| {
            let a = self.get(r / m, c / m);
            if a.is_zero() {
                return R::zero();
            }
            a.mul_ref(o.get(r % m, c % m))
        })
    }

    /// `P M P` with `P` the flip; requires a square dimension.
    pub fn plus(&self) -> Result<Self, TensorError> {
        let local = self.local_dim().ok_or(TensorError::NotASquare(self.n))?;
        Ok(Self::from_fn(self.n, |r, c| {
            let sw = |k: usize| (k % local) * local + k / local;
            self.get(sw(r), sw(c)).clone()
        }))
    }
}

impl<R: crate::scalar::Field> SquareMatrix<R> {
    pub fn determinant(&self) -> R {
        linalg::determinant(self)
    }

    pub fn inverse(&self) -> Result<Self, TensorError> {
        linalg::inverse(self).ok_or(TensorError::NotInvertible)
    }
}

impl SquareMatrix<Scalar> {
    pub fn substitute(&self, at: &Assignment) -> Result<Self, ScalarError> {
        self.try_map(|e| e.substitute(at))
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        self.data.iter().flat_map(|e| e.vars()).collect()
    }

    pub fn is_numeric(&self) -> bool {
        self.data.iter().all(Scalar::is_constant)
    }

    /// Numeric view; `None` if any entry is symbolic.
    pub fn to_numeric(&self) -> Option<SquareMatrix<GaussianRational>> {
        let data = self.data.iter().map(|e| e.as_const().cloned()).collect::<Option<Vec<_>>>()?;
        Some(SquareMatrix { n: self.n, data })
    }

    pub fn from_numeric(m: &SquareMatrix<GaussianRational>) -> Self {
        m.map(|c| Scalar::Const(c.clone()))
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Scalar::from_i64(v)).collect()).collect())
            .expect("square integer rows")
    }
}

impl<R: Ring> fmt::Display for SquareMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for SquareMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SquareMatrix({})\n{}", self.n, self)
    }
}
