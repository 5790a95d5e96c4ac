use crate::scalar::Ring;

use super::{SquareMatrix, TensorError};

/// A tensor factor of `V⊗V⊗V`, numbered 1 to 3.
pub type Leg = usize;

fn local_of<R: Ring>(m: &SquareMatrix<R>) -> Result<usize, TensorError> {
    m.local_dim().ok_or(TensorError::NotASquare(m.dim()))
}

/// Places `m` (acting on `V⊗V`, `dim V = local`) on the ordered legs `(a, b)`
/// of `V⊗V⊗V`, identity on the remaining leg.
pub fn embed<R: Ring>(m: &SquareMatrix<R>, legs: (Leg, Leg), local: usize) -> Result<SquareMatrix<R>, TensorError> {
    let (a, b) = legs;
    if a == b || !(1..=3).contains(&a) || !(1..=3).contains(&b) {
        return Err(TensorError::InvalidLegs);
    }
    if m.dim() != local * local {
        return Err(TensorError::DimensionMismatch { expected: local * local, found: m.dim() });
    }
    let c = 6 - a - b;
    let n3 = local * local * local;
    let place = |digits: [(Leg, usize); 3]| {
        digits.iter().fold(0, |acc, &(leg, d)| acc + d * local.pow(3 - leg as u32))
    };
    let mut out = SquareMatrix::zeros(n3);
    for (r, col, v) in m.nonzero() {
        let (ia, ib) = (r / local, r % local);
        let (ja, jb) = (col / local, col % local);
        for x in 0..local {
            let row = place([(a, ia), (b, ib), (c, x)]);
            let cl = place([(a, ja), (b, jb), (c, x)]);
            out.set(row, cl, v.clone());
        }
    }
    Ok(out)
}

/// `R₁₂S₁₃T₂₃ − T₂₃S₁₃R₁₂`.
pub fn ybc_const<R: Ring>(
    r: &SquareMatrix<R>,
    s: &SquareMatrix<R>,
    t: &SquareMatrix<R>,
) -> Result<SquareMatrix<R>, TensorError> {
    for m in [s, t] {
        if m.dim() != r.dim() {
            return Err(TensorError::DimensionMismatch { expected: r.dim(), found: m.dim() });
        }
    }
    let n = local_of(r)?;
    let r12 = embed(r, (1, 2), n)?;
    let s13 = embed(s, (1, 3), n)?;
    let t23 = embed(t, (2, 3), n)?;
    let lhs = r12.mul(&s13)?.mul(&t23)?;
    let rhs = t23.mul(&s13)?.mul(&r12)?;
    lhs.sub(&rhs)
}

/// Reference embedding built from Kronecker products and the flip on legs 2,3.
pub fn embed_oracle<R: Ring>(m: &SquareMatrix<R>, legs: (Leg, Leg), local: usize) -> SquareMatrix<R> {
    let id = SquareMatrix::identity(local);
    let p23 = id.kron(&SquareMatrix::flip(local));
    let swap12 = SquareMatrix::flip(local).kron(&id);
    let m12 = m.kron(&id);
    let conj = |p: &SquareMatrix<R>, x: &SquareMatrix<R>| p.mul(x).and_then(|y| y.mul(p)).expect("same dims");
    match legs {
        (1, 2) => m12,
        (2, 1) => conj(&swap12, &m12),
        (2, 3) => id.kron(m),
        (3, 2) => id.kron(&m.plus().expect("square")),
        (1, 3) => conj(&p23, &m12),
        (3, 1) => conj(&p23, &conj(&swap12, &m12)),
        _ => panic!("invalid legs {legs:?}"),
    }
}

/// Six-index loop evaluation of `[R, S, T]`, independent of [`embed`].
pub fn ybc_oracle<R: Ring>(r: &SquareMatrix<R>, s: &SquareMatrix<R>, t: &SquareMatrix<R>) -> SquareMatrix<R> {
    let n = r.local_dim().expect("square dimension");
    let e = |m: &SquareMatrix<R>, i1: usize, i2: usize, j1: usize, j2: usize| m.get(i1 * n + i2, j1 * n + j2).clone();
    let idx = |a: usize, b: usize, c: usize| a * n * n + b * n + c;
    let mut out = SquareMatrix::zeros(n * n * n);
    for i1 in 0..n {
        for i2 in 0..n {
            for i3 in 0..n {
                for j1 in 0..n {
                    for j2 in 0..n {
                        for j3 in 0..n {
                            let mut acc = R::zero();
                            // R12 S13 T23
                            for a1 in 0..n {
                                for a2 in 0..n {
                                    for b3 in 0..n {
                                        let p = e(r, i1, i2, a1, a2)
                                            .mul_ref(&e(s, a1, i3, j1, b3))
                                            .mul_ref(&e(t, a2, b3, j2, j3));
                                        acc = acc.add_ref(&p);
                                    }
                                }
                            }
                            // T23 S13 R12
                            for a2 in 0..n {
                                for a3 in 0..n {
                                    for b1 in 0..n {
                                        let p = e(t, i2, i3, a2, a3)
                                            .mul_ref(&e(s, i1, a3, b1, j3))
                                            .mul_ref(&e(r, b1, a2, j1, j2));
                                        acc = acc.sub_ref(&p);
                                    }
                                }
                            }
                            out.set(idx(i1, i2, i3), idx(j1, j2, j3), acc);
                        }
                    }
                }
            }
        }
    }
    out
}
