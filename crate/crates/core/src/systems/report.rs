use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tensor::SquareMatrix;

/// Nonzero residual entries listed per equation; the rest are only counted.
pub const RESIDUAL_CAP: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualEntry {
    /// 1-based `[i₁,i₂,i₃,j₁,j₂,j₃]`, prefixed by `[J₁,J₂,J₃]` for family
    /// equations.
    pub index: Vec<usize>,
    /// Canonical text of the residual entry.
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationResidual {
    pub equation: String,
    pub zero: bool,
    pub nonzero: usize,
    pub entries: Vec<ResidualEntry>,
}

impl EquationResidual {
    pub(super) fn collect(equation: String, local: usize, parts: &[(Option<[usize; 3]>, SquareMatrix)]) -> Self {
        let mut nonzero = 0;
        let mut entries = Vec::new();
        for (family, m) in parts {
            for (r, c, v) in m.nonzero() {
                nonzero += 1;
                if entries.len() < RESIDUAL_CAP {
                    let mut index: Vec<usize> = family.map(|j| j.map(|x| x + 1).to_vec()).unwrap_or_default();
                    index.extend(digits(r, local).into_iter().chain(digits(c, local)).map(|d| d + 1));
                    entries.push(ResidualEntry { index, value: v.to_string() });
                }
            }
        }
        EquationResidual { equation, zero: nonzero == 0, nonzero, entries }
    }
}

fn digits(k: usize, n: usize) -> [usize; 3] {
    [k / (n * n), (k / n) % n, k % n]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub system: String,
    /// Parameter values used, or empty for a symbolic run.
    pub assignment: String,
    pub equations: Vec<EquationResidual>,
}

impl ResidualReport {
    pub fn is_zero(&self) -> bool {
        self.equations.iter().all(|e| e.zero)
    }

    pub fn with_assignment(mut self, assignment: impl Into<String>) -> Self {
        self.assignment = assignment.into();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleSource {
    pub role: String,
    pub source: String,
}

/// One verification run: a system, where its roles came from, and one
/// residual report per evaluated point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationDocument {
    pub system: String,
    pub roles: Vec<RoleSource>,
    pub mode: String,
    pub reports: Vec<ResidualReport>,
    pub passed: bool,
}

#[derive(Debug, Error)]
#[error("invalid report: {0}")]
pub struct ReportError(#[from] serde_json::Error);

impl VerificationDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        Ok(serde_json::from_str(text)?)
    }
}

fn index_text(index: &[usize]) -> String {
    let join = |s: &[usize]| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    match index.len() {
        9 => format!("J=({}) ({};{})", join(&index[..3]), join(&index[3..6]), join(&index[6..])),
        6 => format!("({};{})", join(&index[..3]), join(&index[3..])),
        _ => format!("({})", join(index)),
    }
}

pub fn render_text(doc: &VerificationDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "system: {}", doc.system);
    for r in &doc.roles {
        let _ = writeln!(out, "role {}: {}", r.role, r.source);
    }
    let _ = writeln!(out, "mode: {}", doc.mode);
    for (k, rep) in doc.reports.iter().enumerate() {
        let at = if rep.assignment.is_empty() { "symbolic" } else { rep.assignment.as_str() };
        let _ = writeln!(out, "point {}: {at}", k + 1);
        for eq in &rep.equations {
            if eq.zero {
                let _ = writeln!(out, "  {}  zero", eq.equation);
                continue;
            }
            let _ = writeln!(out, "  {}  {} nonzero", eq.equation, eq.nonzero);
            for e in &eq.entries {
                let _ = writeln!(out, "    {}  {}", index_text(&e.index), e.value);
            }
            if eq.nonzero > eq.entries.len() {
                let _ = writeln!(out, "    ... {} more", eq.nonzero - eq.entries.len());
            }
        }
    }
    let _ = writeln!(out, "result: {}", if doc.passed { "PASS" } else { "FAIL" });
    out
}
