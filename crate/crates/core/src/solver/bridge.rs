use crate::systems::{roles, verify, SystemDef};
use crate::tensor::{SquareMatrix, TensorError};

use super::SolverError;

/// `(Q, R) ↦ (W, X, Z) = (Q, R, P(R⁺QR⁻)P)`, checked on both ends.
pub fn qbg_to_qdouble(q: &SquareMatrix, r: &SquareMatrix) -> Result<[SquareMatrix; 3], SolverError> {
    let (ok, report) = verify(&SystemDef::qbg(), &roles([("Q", q.clone()), ("R", r.clone())]))?;
    if !ok {
        return Err(SolverError::InputNotQbgSolution(Box::new(report)));
    }
    let z = printed_bridge(q, r)?.plus()?;
    let (ok, report) = verify(&SystemDef::qdouble(), &roles([("W", q.clone()), ("X", r.clone()), ("Z", z.clone())]))?;
    if !ok {
        return Err(SolverError::BridgeFailed(Box::new(report)));
    }
    Ok([q.clone(), r.clone(), z])
}

/// `R⁺QR⁻`, the third matrix as printed.
pub fn printed_bridge(q: &SquareMatrix, r: &SquareMatrix) -> Result<SquareMatrix, SolverError> {
    let rinv = r.inverse().map_err(|e| match e {
        TensorError::NotInvertible => SolverError::NotInvertible { matrix: "R".into(), step: "R^-1".into() },
        other => SolverError::Tensor(other),
    })?;
    Ok(r.plus()?.mul(q)?.mul(&rinv)?)
}
