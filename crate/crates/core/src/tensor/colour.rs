use crate::scalar::{Assignment, Scalar, Var};

use super::{ybc_const, SquareMatrix, TensorError};

/// A matrix depending on a pair of colour variables `(u, v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ColourMatrix {
    pub base: SquareMatrix,
    pub u: Var,
    pub v: Var,
}

impl ColourMatrix {
    pub fn new(base: SquareMatrix, u: Var, v: Var) -> Self {
        ColourMatrix { base, u, v }
    }

    /// Colour variables `u`, `v`.
    pub fn standard(base: SquareMatrix) -> Self {
        Self::new(base, Var::new("u"), Var::new("v"))
    }

    /// Substitutes `(u, v) → (x, y)` simultaneously.
    pub fn at(&self, x: &Scalar, y: &Scalar) -> Result<SquareMatrix, TensorError> {
        let mut a = Assignment::new();
        a.insert(self.u, x.clone());
        a.insert(self.v, y.clone());
        Ok(self.base.substitute(&a)?)
    }

    /// `X‡(u,v) = P X(v,u) P`.
    pub fn dagger(&self) -> Result<Self, TensorError> {
        let swapped = self.at(&Scalar::var(self.v), &Scalar::var(self.u))?;
        Ok(ColourMatrix { base: swapped.plus()?, u: self.u, v: self.v })
    }

    pub fn with_base(&self, base: SquareMatrix) -> Self {
        ColourMatrix { base, u: self.u, v: self.v }
    }
}

/// `R₁₂(u₁,u₂) S₁₃(u₁,u₃) T₂₃(u₂,u₃) − T₂₃(u₂,u₃) S₁₃(u₁,u₃) R₁₂(u₁,u₂)`.
pub fn ybc_colour(r: &ColourMatrix, s: &ColourMatrix, t: &ColourMatrix) -> Result<SquareMatrix, TensorError> {
    let [u1, u2, u3] = ["u1", "u2", "u3"].map(Scalar::symbol);
    let r = r.at(&u1, &u2)?;
    let s = s.at(&u1, &u3)?;
    let t = t.at(&u2, &u3)?;
    ybc_const(&r, &s, &t)
}
