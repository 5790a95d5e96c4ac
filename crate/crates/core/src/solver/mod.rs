//! Solving strategy for the quantum-double system: exact nullspaces of the
//! `Z`-linear equation, emitted polynomial systems for the `X`- and
//! `Z`-equations, the symmetry transforms and the braided-group bridge.

mod bridge;
mod linear;
mod poly;
mod symmetry;

use thiserror::Error;

use crate::catalog::CatalogError;
use crate::scalar::ScalarError;
use crate::systems::{ResidualReport, SystemError};
use crate::tensor::TensorError;

pub use bridge::{printed_bridge, qbg_to_qdouble};
pub use linear::{generic_z_dimension, nullspace, rank, rref, solve_z_linear, z_linear_system, Rref, SolutionSpace};
pub use poly::{emit_x_system, filter_ybe, Cell, Pattern, PolySystem};
pub use symmetry::{apply_transform, Continuous, Discrete, TransformSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("X has symbolic entries; substitute numeric parameter values first")]
    SymbolicInput,
    #[error("dimension {0} is not the square of a local dimension")]
    NotASquare(usize),
    #[error("{matrix} is not invertible at step {step}")]
    NotInvertible { matrix: String, step: String },
    #[error("(Q, R) does not solve the quantized braided group system")]
    InputNotQbgSolution(Box<ResidualReport>),
    #[error("constructed triple fails the quantum double system")]
    BridgeFailed(Box<ResidualReport>),
    #[error("nullspace dimension differs between sample points: {0:?}")]
    DimensionDisagreement(Vec<usize>),
    #[error("invalid transform word '{0}'")]
    BadWord(String),
    #[error("line {line}: {message}")]
    PolyFormat { line: usize, message: String },
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
