use crate::scalar::{Field, Ring};

use super::SquareMatrix;

const SMALL: usize = 4;

pub(super) fn determinant<R: Field>(m: &SquareMatrix<R>) -> R {
    if m.dim() <= SMALL {
        let idx: Vec<usize> = (0..m.dim()).collect();
        laplace(m, &idx, &idx)
    } else {
        bareiss(m)
    }
}

/// Cofactor expansion of the minor on `rows × cols` along its first row.
fn laplace<R: Ring>(m: &SquareMatrix<R>, rows: &[usize], cols: &[usize]) -> R {
    match rows.len() {
        0 => R::one(),
        1 => m.get(rows[0], cols[0]).clone(),
        2 => {
            let ad = m.get(rows[0], cols[0]).mul_ref(m.get(rows[1], cols[1]));
            let bc = m.get(rows[0], cols[1]).mul_ref(m.get(rows[1], cols[0]));
            ad.sub_ref(&bc)
        }
        _ => {
            let mut acc = R::zero();
            for (k, &c) in cols.iter().enumerate() {
                let a = m.get(rows[0], c);
                if a.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = a.mul_ref(&laplace(m, &rows[1..], &rest));
                acc = if k % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
            }
            acc
        }
    }
}

/// Fraction-free elimination; every division is exact.
fn bareiss<R: Field>(m: &SquareMatrix<R>) -> R {
    let n = m.dim();
    let mut a: Vec<Vec<R>> = m.rows().map(<[R]>::to_vec).collect();
    let mut prev = R::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return R::zero(),
            }
        }
        let prev_inv = prev.try_inv().expect("previous pivot is nonzero");
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul_ref(&a[i][j]).sub_ref(&a[i][k].mul_ref(&a[k][j]));
                a[i][j] = num.mul_ref(&prev_inv);
            }
            a[i][k] = R::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg_ref()
    } else {
        d
    }
}

pub(super) fn inverse<R: Field>(m: &SquareMatrix<R>) -> Option<SquareMatrix<R>> {
    if m.dim() <= SMALL {
        adjugate_inverse(m)
    } else {
        gauss_jordan(m)
    }
}

fn adjugate_inverse<R: Field>(m: &SquareMatrix<R>) -> Option<SquareMatrix<R>> {
    let n = m.dim();
    let det_inv = determinant(m).try_inv()?;
    Some(SquareMatrix::from_fn(n, |i, j| {
        // inverse(i, j) = cofactor(j, i) / det
        let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
        let minor = laplace(m, &rows, &cols);
        if minor.is_zero() {
            return R::zero();
        }
        let c = if (i + j) % 2 == 0 { minor } else { minor.neg_ref() };
        c.mul_ref(&det_inv)
    }))
}

fn gauss_jordan<R: Field>(m: &SquareMatrix<R>) -> Option<SquareMatrix<R>> {
    let n = m.dim();
    let mut a: Vec<Vec<R>> = m.rows().map(<[R]>::to_vec).collect();
    let mut inv: Vec<Vec<R>> = SquareMatrix::<R>::identity(n).rows().map(<[R]>::to_vec).collect();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, p);
        inv.swap(k, p);
        let piv = a[k][k].try_inv()?;
        for j in 0..n {
            a[k][j] = a[k][j].mul_ref(&piv);
            inv[k][j] = inv[k][j].mul_ref(&piv);
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..n {
                if !a[k][j].is_zero() {
                    a[i][j] = a[i][j].sub_ref(&f.mul_ref(&a[k][j]));
                }
                if !inv[k][j].is_zero() {
                    inv[i][j] = inv[i][j].sub_ref(&f.mul_ref(&inv[k][j]));
                }
            }
        }
    }
    SquareMatrix::from_rows(inv).ok()
}
