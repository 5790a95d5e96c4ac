use rand::Rng;

use crate::catalog::NamedMatrix;
use crate::scalar::{Field, GaussianRational, Ring};
use crate::tensor::{ybc_const, SquareMatrix};

use super::SolverError;

type Q = GaussianRational;

/// Dense exact matrix in reduced row echelon form.
#[derive(Debug, Clone, PartialEq)]
pub struct Rref {
    pub rows: Vec<Vec<Q>>,
    pub pivots: Vec<usize>,
}

/// Gauss–Jordan elimination; pivots are taken in column order and the first
/// nonzero row is used, so the result is deterministic.
pub fn rref(mut rows: Vec<Vec<Q>>, cols: usize) -> Rref {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].try_inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = x.mul_ref(&inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.sub_ref(&f.mul_ref(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Rref { rows, pivots }
}

/// Echelon-normalized basis of `{v : A v = 0}`.
pub fn nullspace(rows: Vec<Vec<Q>>, cols: usize) -> Vec<Vec<Q>> {
    let red = rref(rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !red.pivots.contains(c)).collect();
    let basis: Vec<Vec<Q>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (row, &p) in red.rows.iter().zip(&red.pivots) {
                v[p] = row[f].neg_ref();
            }
            v
        })
        .collect();
    rref(basis, cols).rows
}

pub fn rank(rows: Vec<Vec<Q>>, cols: usize) -> usize {
    rref(rows, cols).pivots.len()
}

/// A linear space of `n×n` matrices, stored as an echelon basis of their
/// row-major entry vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSpace {
    pub n: usize,
    pub basis: Vec<SquareMatrix<Q>>,
}

impl SolutionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn vectors(&self) -> Vec<Vec<Q>> {
        self.basis.iter().map(|m| m.entries().to_vec()).collect()
    }

    /// Exact membership: adding `m` does not raise the rank.
    pub fn contains(&self, m: &SquareMatrix<Q>) -> bool {
        if m.dim() != self.n {
            return false;
        }
        let mut v = self.vectors();
        v.push(m.entries().to_vec());
        rank(v, self.n * self.n) == self.dim()
    }

    /// Coordinates of `m` in the basis, if it is a member.
    pub fn coordinates(&self, m: &SquareMatrix<Q>) -> Option<Vec<Q>> {
        if !self.contains(m) {
            return None;
        }
        let lead = |b: &SquareMatrix<Q>| b.entries().iter().position(|e| !e.is_zero()).expect("nonzero basis member");
        Some(self.basis.iter().map(|b| m.entries()[lead(b)].clone()).collect())
    }

    pub fn basis_scalar(&self) -> Vec<SquareMatrix> {
        self.basis.iter().map(SquareMatrix::from_numeric).collect()
    }
}

/// Column `k` is the residual of `[X,X,E_k]` for the `k`-th matrix unit.
fn z_system(x: &SquareMatrix<Q>) -> Result<(Vec<Vec<Q>>, usize), SolverError> {
    let n = x.dim();
    let cols = n * n;
    let mut columns = Vec::with_capacity(cols);
    for k in 0..cols {
        let mut e = SquareMatrix::<Q>::zeros(n);
        e.set(k / n, k % n, Q::one());
        columns.push(ybc_const(x, x, &e)?);
    }
    let rows_n = columns[0].dim() * columns[0].dim();
    let rows = (0..rows_n).map(|r| columns.iter().map(|c| c.entries()[r].clone()).collect()).collect();
    Ok((rows, cols))
}

/// Rows of the linear map `Z ↦ X₁₂X₁₃Z₂₃ − Z₂₃X₁₃X₁₂`, an `N⁶×N⁴` system.
pub fn z_linear_system(x: &SquareMatrix) -> Result<Vec<Vec<Q>>, SolverError> {
    let x = x.to_numeric().ok_or(SolverError::SymbolicInput)?;
    Ok(z_system(&x)?.0)
}

/// Basis of all `Z` with `[X,X,Z] = 0`.
pub fn solve_z_linear(x: &SquareMatrix) -> Result<SolutionSpace, SolverError> {
    let xq = x.to_numeric().ok_or(SolverError::SymbolicInput)?;
    if x.local_dim().is_none() {
        return Err(SolverError::NotASquare(x.dim()));
    }
    let n = x.dim();
    let (rows, cols) = z_system(&xq)?;
    let basis = nullspace(rows, cols)
        .into_iter()
        .map(|v| SquareMatrix::new(n, v).expect("n*n entries"))
        .collect();
    Ok(SolutionSpace { n, basis })
}

/// Nullspace dimension of a parameterized entry at three random admissible
/// points on `branch`; the three must agree.
pub fn generic_z_dimension(entry: &NamedMatrix, branch: usize, rng: &mut impl Rng) -> Result<usize, SolverError> {
    let mut dims = Vec::with_capacity(3);
    for _ in 0..3 {
        let at = entry.sample(branch, rng)?;
        dims.push(solve_z_linear(&entry.instantiate(&at)?)?.dim());
    }
    if dims.windows(2).any(|w| w[0] != w[1]) {
        return Err(SolverError::DimensionDisagreement(dims));
    }
    Ok(dims[0])
}
