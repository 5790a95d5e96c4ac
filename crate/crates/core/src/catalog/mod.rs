//! The paper's matrices with their admissibility constraints.
//!
//! Each entry carries default witness values for its free parameters and one
//! or more branches. A branch binds the parameters that the constraints pin
//! down (for `W`, the choice `t = q` or `t = -q^-1`); the witness of a branch
//! is the defaults overridden by the branch bindings. Random admissible
//! points replace the free parameters that a branch leaves unbound.

mod conclusions;
mod entries;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use rand::Rng;
use thiserror::Error;

use crate::expr::{self, ExprAst};
use crate::random::random_nonzero_rational;
use crate::scalar::{Assignment, Scalar, ScalarError, Var};
use crate::tensor::{ColourMatrix, SquareMatrix};

pub use conclusions::{bound_vars, conclusions, Branch, BranchKind, Triple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry '{0}'")]
    UnknownName(String),
    #[error("{name}: constraint violated: {constraint}")]
    ConstraintViolated { name: String, constraint: String },
    #[error("{0} is a colour matrix")]
    ColourEntry(String),
    #[error("{0} is not a colour matrix")]
    NotColour(String),
    #[error("no admissible point found for {0}")]
    NoAdmissiblePoint(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub label: String,
    pub expr: Scalar,
}

/// Polynomial equalities `e = 0` and inequations `e ≠ 0`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConstraintSet {
    pub equalities: Vec<Constraint>,
    pub inequations: Vec<Constraint>,
}

impl ConstraintSet {
    /// A constraint is only violated when its value is decided: an equality
    /// evaluating to a nonzero constant, or an inequation evaluating to zero.
    /// Inequations are checked first so that `q ≠ 0` is reported before any
    /// constraint that is undefined at `q = 0`.
    pub fn violated(&self, at: &Assignment) -> Option<&Constraint> {
        for c in &self.inequations {
            match c.expr.substitute(at) {
                Ok(v) if !v.is_zero() => {}
                _ => return Some(c),
            }
        }
        for c in &self.equalities {
            match c.expr.substitute(at) {
                Ok(v) if v.is_zero() || !v.is_constant() => {}
                _ => return Some(c),
            }
        }
        None
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.equalities.iter().chain(&self.inequations).flat_map(|c| c.expr.vars()).collect()
    }
}

impl fmt::Display for ConstraintSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> =
            self.inequations.iter().chain(&self.equalities).map(|c| c.label.as_str()).collect();
        if labels.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&labels.join(", "))
        }
    }
}

/// Which branches of an entry solve the Yang–Baxter equation on their own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum YbeStatus {
    No,
    Yes,
    Branches(Vec<usize>),
}

#[derive(Debug, Clone)]
pub struct NamedMatrix {
    pub name: String,
    pub params: Vec<Var>,
    pub colour: Option<(Var, Var)>,
    pub constraints: ConstraintSet,
    pub sources: Vec<Vec<String>>,
    pub asts: Vec<Vec<ExprAst>>,
    symbolic: SquareMatrix,
    pub defaults: Assignment,
    pub branches: Vec<Assignment>,
    pub ybe: YbeStatus,
    pub note: String,
}

impl NamedMatrix {
    pub fn dim(&self) -> usize {
        self.symbolic.dim()
    }

    pub fn is_colour(&self) -> bool {
        self.colour.is_some()
    }

    /// The matrix with every parameter left symbolic.
    pub fn symbolic(&self) -> &SquareMatrix {
        &self.symbolic
    }

    pub fn solves_ybe(&self, branch: usize) -> bool {
        match &self.ybe {
            YbeStatus::No => false,
            YbeStatus::Yes => true,
            YbeStatus::Branches(b) => b.contains(&branch),
        }
    }

    /// Free parameters: those with a default witness value.
    pub fn free(&self) -> Vec<Var> {
        self.defaults.vars().collect()
    }

    pub fn witness(&self, branch: usize) -> Assignment {
        self.defaults.merged(&self.branches[branch])
    }

    /// Fully symbolic assignment for a branch: only the branch bindings.
    pub fn branch(&self, branch: usize) -> &Assignment {
        &self.branches[branch]
    }

    pub fn check(&self, at: &Assignment) -> Result<Assignment, CatalogError> {
        let at = at.resolved()?;
        if let Some(c) = self.constraints.violated(&at) {
            return Err(CatalogError::ConstraintViolated { name: self.name.clone(), constraint: c.label.clone() });
        }
        Ok(at)
    }

    /// Base matrix at `at`; for colour entries the colour variables stay
    /// symbolic unless assigned.
    pub fn instantiate_base(&self, at: &Assignment) -> Result<SquareMatrix, CatalogError> {
        let at = self.check(at)?;
        Ok(self.symbolic.substitute(&at)?)
    }

    pub fn instantiate(&self, at: &Assignment) -> Result<SquareMatrix, CatalogError> {
        if self.is_colour() {
            return Err(CatalogError::ColourEntry(self.name.clone()));
        }
        self.instantiate_base(at)
    }

    pub fn instantiate_colour(&self, at: &Assignment) -> Result<ColourMatrix, CatalogError> {
        let (u, v) = self.colour.ok_or_else(|| CatalogError::NotColour(self.name.clone()))?;
        Ok(ColourMatrix::new(self.instantiate_base(at)?, u, v))
    }

    /// Random admissible point on `branch`: each free parameter the branch
    /// leaves unbound becomes a random nonzero rational.
    pub fn sample(&self, branch: usize, rng: &mut impl Rng) -> Result<Assignment, CatalogError> {
        sample_point(&[self], &self.defaults, &self.branches[branch], rng)
            .ok_or_else(|| CatalogError::NoAdmissiblePoint(self.name.clone()))
    }
}

/// Draws a point admissible for every entry in `members`.
pub(crate) fn sample_point(
    members: &[&NamedMatrix],
    defaults: &Assignment,
    bind: &Assignment,
    rng: &mut impl Rng,
) -> Option<Assignment> {
    for _ in 0..200 {
        let mut at = Assignment::new();
        for v in defaults.vars().filter(|v| !bind.contains(*v)) {
            at.insert(v, random_nonzero_rational(rng));
        }
        let at = at.merged(bind);
        let Ok(resolved) = at.resolved() else { continue };
        let admissible = members.iter().all(|m| {
            m.constraints.violated(&resolved).is_none() && m.symbolic.substitute(&resolved).is_ok()
        });
        if admissible {
            return Some(at);
        }
    }
    None
}

/// Instantiated catalog matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Constant(SquareMatrix),
    Colour(ColourMatrix),
}

pub fn catalog() -> &'static [NamedMatrix] {
    static CATALOG: OnceLock<Vec<NamedMatrix>> = OnceLock::new();
    CATALOG.get_or_init(|| entries::DEFS.iter().map(entries::build).collect())
}

pub fn get(name: &str) -> Result<&'static NamedMatrix, CatalogError> {
    catalog().iter().find(|m| m.name == name).ok_or_else(|| CatalogError::UnknownName(name.to_owned()))
}

pub fn instantiate(name: &str, at: &Assignment) -> Result<Instance, CatalogError> {
    let m = get(name)?;
    if m.is_colour() {
        m.instantiate_colour(at).map(Instance::Colour)
    } else {
        m.instantiate(at).map(Instance::Constant)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Listing {
    pub name: String,
    pub params: Vec<String>,
    pub constraints: String,
    pub note: String,
}

pub fn list_catalog() -> Vec<Listing> {
    catalog()
        .iter()
        .map(|m| Listing {
            name: m.name.clone(),
            params: m.params.iter().map(|v| v.name()).collect(),
            constraints: m.constraints.to_string(),
            note: m.note.clone(),
        })
        .collect()
}

/// Human-readable display of one entry.
pub fn show(m: &NamedMatrix) -> String {
    let mut out = format!("{}  ({}x{})\n", m.name, m.dim(), m.dim());
    let params: Vec<String> = m.params.iter().map(|v| v.name()).collect();
    out.push_str(&format!("params: {}\n", if params.is_empty() { "none".into() } else { params.join(" ") }));
    if let Some((u, v)) = m.colour {
        out.push_str(&format!("colour: {u} {v}\n"));
    }
    out.push_str(&format!("constraints: {}\n", m.constraints));
    for (k, b) in m.branches.iter().enumerate() {
        if !b.is_empty() {
            out.push_str(&format!("branch {k}: {b}\n"));
        }
    }
    out.push_str(&format!("witness: {}\n", m.witness(0)));
    let width = m.sources.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in &m.sources {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&format!("  [ {} ]\n", cells.join("  ")));
    }
    if !m.note.is_empty() {
        out.push_str(&format!("note: {}\n", m.note));
    }
    out
}

/// Parses `name=expr` pairs into an assignment.
pub fn parse_assignment<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Assignment, expr::ExprError> {
    let mut at = Assignment::new();
    for (k, v) in pairs {
        at.insert(Var::new(k), expr::parse_scalar(v)?);
    }
    Ok(at)
}
