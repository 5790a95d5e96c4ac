//! Exact scalar tower: Gaussian rationals, Laurent polynomials over them,
//! and rational functions.

mod gaussian;
mod polynomial;
mod rational;
mod ring;
mod value;
mod vars;

pub use gaussian::GaussianRational;
pub use polynomial::{Monomial, Polynomial};
pub use rational::RationalFunction;
pub use ring::{Field, Ring};
pub use value::{Assignment, Scalar};
pub use vars::{Var, STANDARD_VARIABLES};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes under substitution")]
    DenominatorVanishes,
    #[error("assignment refers to itself cyclically")]
    CyclicAssignment,
}

#[cfg(test)]
mod proptests;
