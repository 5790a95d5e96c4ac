use std::fmt;

/// Commutative ring with exact arithmetic; matrix entries live here.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn is_one(&self) -> bool {
        self.sub_ref(&Self::one()).is_zero()
    }
}

/// A ring in which every nonzero element has an inverse.
pub trait Field: Ring {
    /// `None` exactly when `self` is zero.
    fn try_inv(&self) -> Option<Self>;
}
