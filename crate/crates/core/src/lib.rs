//! Exact computer algebra for Yang–Baxter systems.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`]: Gaussian rationals, Laurent polynomials and rational functions;
//! * [`expr`]: the entry-expression grammar used by matrix files and the CLI;
//! * [`tensor`]: square matrices, leg embeddings, Yang–Baxter commutators and
//!   the discrete matrix transforms;
//! * [`catalog`]: named, parameterized R-matrices with admissibility constraints;
//! * [`systems`]: declarative Yang–Baxter systems and exact residual reports;
//! * [`solver`]: nullspace solving of the linear Z-equation, polynomial-system
//!   emission, the symmetry engine and the braided-group bridge.

pub mod catalog;
pub mod expr;
pub mod random;
pub mod scalar;
pub mod solver;
pub mod systems;
pub mod tensor;

pub use scalar::{Assignment, Field, GaussianRational, Polynomial, Ring, Scalar, ScalarError, Var};
pub use tensor::{ColourMatrix, SquareMatrix};
