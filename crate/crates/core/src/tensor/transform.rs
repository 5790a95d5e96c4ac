use std::fmt;
use std::str::FromStr;

use crate::scalar::{Ring, Scalar};

use super::{ColourMatrix, SquareMatrix, TensorError};

/// Unary matrix transforms: `t` transpose, `+` is `PYP`, `-` the inverse,
/// `#` is `(Y⁺)⁻¹`, and `‡` the colour swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Transform {
    Id,
    Transpose,
    Plus,
    Minus,
    Sharp,
    Dagger,
}

impl Transform {
    pub const ALL: [Transform; 6] =
        [Transform::Id, Transform::Transpose, Transform::Plus, Transform::Minus, Transform::Sharp, Transform::Dagger];

    pub fn symbol(self) -> &'static str {
        match self {
            Transform::Id => "",
            Transform::Transpose => "t",
            Transform::Plus => "+",
            Transform::Minus => "-",
            Transform::Sharp => "#",
            Transform::Dagger => "‡",
        }
    }

    pub fn apply(self, m: &SquareMatrix) -> Result<SquareMatrix, TensorError> {
        match self {
            Transform::Id => Ok(m.clone()),
            Transform::Transpose => Ok(m.transpose()),
            Transform::Plus => m.plus(),
            Transform::Minus => m.inverse(),
            Transform::Sharp => m.plus()?.inverse(),
            Transform::Dagger => Err(TensorError::UnsupportedTransform(self)),
        }
    }

    pub fn apply_colour(self, m: &ColourMatrix) -> Result<ColourMatrix, TensorError> {
        match self {
            Transform::Dagger => m.dagger(),
            other => Ok(m.with_base(other.apply(&m.base)?)),
        }
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transform::Id => f.write_str("id"),
            other => f.write_str(other.symbol()),
        }
    }
}

impl FromStr for Transform {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "" | "id" => Transform::Id,
            "t" => Transform::Transpose,
            "+" => Transform::Plus,
            "-" => Transform::Minus,
            "#" => Transform::Sharp,
            "‡" | "dagger" => Transform::Dagger,
            _ => return Err(format!("unknown transform '{s}'")),
        })
    }
}

/// `scale · (left⊗right) · M · (left⊗right)⁻¹`.
pub fn conjugate(
    m: &SquareMatrix,
    left: &SquareMatrix,
    right: &SquareMatrix,
    scale: &Scalar,
) -> Result<SquareMatrix, TensorError> {
    if scale.is_zero() {
        return Err(TensorError::ZeroScale);
    }
    let g = left.kron(right);
    if g.dim() != m.dim() {
        return Err(TensorError::DimensionMismatch { expected: m.dim(), found: g.dim() });
    }
    let gi = g.inverse()?;
    Ok(g.mul(m)?.mul(&gi)?.scale(scale))
}

/// `(M^{t₁})^{i₁i₂}_{j₁j₂} = M^{j₁i₂}_{i₁j₂}`.
pub fn partial_transpose_leg1<R: Ring>(m: &SquareMatrix<R>) -> Result<SquareMatrix<R>, TensorError> {
    let n = m.local_dim().ok_or(TensorError::NotASquare(m.dim()))?;
    Ok(SquareMatrix::from_fn(m.dim(), |r, c| {
        let (i1, i2) = (r / n, r % n);
        let (j1, j2) = (c / n, c % n);
        m.get(j1 * n + i2, i1 * n + j2).clone()
    }))
}
