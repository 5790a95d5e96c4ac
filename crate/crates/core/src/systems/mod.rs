//! Yang–Baxter systems as data, and their exact residuals.
//!
//! A system is a list of equations `[f(R), g(S), h(T)] = 0`, each naming three
//! roles with a transform tag. Three commutator kinds exist: constant
//! `[R,S,T]`, colour `[[R,S,T]]` with colour variables `u₁,u₂,u₃`, and family
//! `{[R,S,T]}` evaluated for every index triple `(J₁,J₂,J₃)`.

mod report;
pub mod spectral;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::scalar::Var;
use crate::tensor::{partial_transpose_leg1, ybc_colour, ybc_const, ColourMatrix, SquareMatrix, TensorError, Transform};

pub use report::{
    render_text, EquationResidual, ReportError, ResidualEntry, ResidualReport, RoleSource, VerificationDocument,
    RESIDUAL_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("unknown system '{0}'")]
    UnknownSystem(String),
    #[error("role {0} is not assigned")]
    MissingRole(String),
    #[error("role {role}: {transform} requires an invertible matrix")]
    NotInvertible { role: String, transform: Transform },
    #[error("role {role}: dimension {found}, expected {expected}")]
    DimensionMismatch { role: String, expected: usize, found: usize },
    #[error("role {role}: expected a {expected} value")]
    KindMismatch { role: String, expected: Kind },
    #[error("equation {equation} references undeclared role {role}")]
    UndeclaredRole { equation: String, role: String },
    #[error("transform {transform} is not allowed in {kind} equations")]
    InvalidTransform { transform: Transform, kind: Kind },
    #[error("malformed equation '{0}'")]
    Malformed(String),
    #[error("family members must share size, local dimension and colour variables")]
    FamilyShape,
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Const,
    Colour,
    Family,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Const => "constant",
            Kind::Colour => "colour",
            Kind::Family => "family",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub role: String,
    pub transform: Transform,
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.transform {
            Transform::Transpose => write!(f, "{}^t", self.role),
            t => write!(f, "{}{}", self.role, t.symbol()),
        }
    }
}

impl FromStr for Term {
    type Err = SystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (role, transform) = [("^t", Transform::Transpose), ("^dagger", Transform::Dagger)]
            .into_iter()
            .chain(["‡", "+", "-", "#"].map(|sym| (sym, sym.parse().expect("transform symbol"))))
            .find_map(|(suffix, t)| s.strip_suffix(suffix).map(|r| (r, t)))
            .unwrap_or((s, Transform::Id));
        let valid = !role.is_empty() && role.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !valid {
            return Err(SystemError::Malformed(s.to_owned()));
        }
        Ok(Term { role: role.to_owned(), transform })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub kind: Kind,
    pub terms: [Term; 3],
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.terms;
        match self.kind {
            Kind::Const => write!(f, "[{a},{b},{c}]"),
            Kind::Colour => write!(f, "[[{a},{b},{c}]]"),
            Kind::Family => write!(f, "{{[{a},{b},{c}]}}"),
        }
    }
}

impl FromStr for Equation {
    type Err = SystemError;

    /// `[R,S,T]`, `[[R,S,T]]` or `{[R,S,T]}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let malformed = || SystemError::Malformed(t.to_owned());
        let (kind, inner) = if let Some(x) = t.strip_prefix("[[").and_then(|x| x.strip_suffix("]]")) {
            (Kind::Colour, x)
        } else if let Some(x) = t.strip_prefix("{[").and_then(|x| x.strip_suffix("]}")) {
            (Kind::Family, x)
        } else if let Some(x) = t.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
            (Kind::Const, x)
        } else {
            return Err(malformed());
        };
        let terms: Vec<Term> = inner.split(',').map(str::parse).collect::<Result<_, _>>()?;
        let terms: [Term; 3] = terms.try_into().map_err(|_| malformed())?;
        Ok(Equation { kind, terms })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemDef {
    pub name: String,
    pub roles: Vec<String>,
    pub equations: Vec<Equation>,
    /// Members must have nonzero determinant.
    pub invertible: bool,
}

impl SystemDef {
    pub fn new(name: &str, roles: &[&str], equations: Vec<Equation>) -> Result<Self, SystemError> {
        let roles: Vec<String> = roles.iter().map(|r| (*r).to_owned()).collect();
        for eq in &equations {
            for t in &eq.terms {
                if !roles.contains(&t.role) {
                    return Err(SystemError::UndeclaredRole { equation: eq.to_string(), role: t.role.clone() });
                }
                if t.transform == Transform::Dagger && eq.kind == Kind::Const {
                    return Err(SystemError::InvalidTransform { transform: t.transform, kind: eq.kind });
                }
            }
        }
        Ok(SystemDef { name: name.to_owned(), roles, equations, invertible: false })
    }

    /// Equations separated by `;`.
    pub fn parse(name: &str, roles: &[&str], equations: &str) -> Result<Self, SystemError> {
        let eqs = equations.split(';').filter(|e| !e.trim().is_empty()).map(str::parse).collect::<Result<_, _>>()?;
        Self::new(name, roles, eqs)
    }

    pub fn ybe() -> Self {
        Self::parse("ybe", &["R"], "[R,R,R]").expect("builtin")
    }

    pub fn qbg() -> Self {
        Self::parse("qbg", &["Q", "R"], "[Q,Q,Q]; [R,R,R]; [Q,R,R]; [R,R,Q]").expect("builtin")
    }

    pub fn qdouble() -> Self {
        Self::parse("qdouble", &["W", "X", "Z"], "[W,W,W]; [W,X,X]; [X,X,Z]; [Z,Z,Z]").expect("builtin")
    }

    pub fn reflection() -> Self {
        Self::parse(
            "reflection",
            &["A", "B", "C", "D"],
            "[A,A,A]; [D,D,D]; [A,C,C]; [D,B,B]; [A,B+,B+]; [D,C+,C+]; [A,C,B+]; [D,B,C+]",
        )
        .expect("builtin")
    }

    pub fn spectral_reflection() -> Self {
        Self::parse(
            "spectral-reflection",
            &["A", "B", "C", "D"],
            "[[A,A,A]]; [[D,D,D]]; [[A,C,C]]; [[D,B,B]]; [[A,B‡,B‡]]; [[D,C‡,C‡]]; [[A,C,B‡]]; [[D,B,C‡]]",
        )
        .expect("builtin")
    }

    pub fn braided_family() -> Self {
        let mut s = Self::parse(
            "braided-family",
            &["W", "X", "Y", "Z"],
            "{[Z,Z,Z]}; {[W,W,W]}; {[Z,X,X]}; {[X,X,W]}; {[Z,Y‡,Y‡]}; {[Y‡,Y‡,W]}; {[Z,X,Y‡]}; {[Y‡,X,W]}",
        )
        .expect("builtin");
        s.invertible = true;
        s
    }

    pub fn builtin(name: &str) -> Result<Self, SystemError> {
        Ok(match name.to_ascii_lowercase().replace('_', "-").as_str() {
            "ybe" => Self::ybe(),
            "qbg" => Self::qbg(),
            "qdouble" => Self::qdouble(),
            "reflection" => Self::reflection(),
            "spectral-reflection" => Self::spectral_reflection(),
            "braided-family" => Self::braided_family(),
            _ => return Err(SystemError::UnknownSystem(name.to_owned())),
        })
    }

    pub const BUILTIN: [&'static str; 6] =
        ["ybe", "qbg", "qdouble", "reflection", "spectral-reflection", "braided-family"];
}

/// `grid[J][K]` is `X^{JK}(u,v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFamily {
    grid: Vec<Vec<ColourMatrix>>,
}

impl MatrixFamily {
    pub fn new(grid: Vec<Vec<ColourMatrix>>) -> Result<Self, SystemError> {
        let n = grid.len();
        let first = grid.first().and_then(|r| r.first()).ok_or(SystemError::FamilyShape)?;
        let ok = grid.iter().all(|row| {
            row.len() == n
                && row.iter().all(|m| m.base.dim() == first.base.dim() && m.u == first.u && m.v == first.v)
        });
        if !ok || first.base.local_dim().is_none() {
            return Err(SystemError::FamilyShape);
        }
        Ok(MatrixFamily { grid })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> ColourMatrix) -> Result<Self, SystemError> {
        Self::new((0..n).map(|j| (0..n).map(|k| f(j, k)).collect()).collect())
    }

    pub fn size(&self) -> usize {
        self.grid.len()
    }

    pub fn get(&self, j: usize, k: usize) -> &ColourMatrix {
        &self.grid[j][k]
    }

    pub fn members(&self) -> impl Iterator<Item = &ColourMatrix> {
        self.grid.iter().flatten()
    }

    /// `(Y‡)^{JK}(u,v) = P Y^{KJ}(v,u) P`; other transforms act member-wise.
    pub fn transform(&self, t: Transform) -> Result<Self, TensorError> {
        let n = self.size();
        let mut grid = Vec::with_capacity(n);
        for j in 0..n {
            let mut row = Vec::with_capacity(n);
            for k in 0..n {
                row.push(match t {
                    Transform::Dagger => self.grid[k][j].dagger()?,
                    other => other.apply_colour(&self.grid[j][k])?,
                });
            }
            grid.push(row);
        }
        Ok(MatrixFamily { grid })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RoleValue {
    Constant(SquareMatrix),
    Colour(ColourMatrix),
    Family(MatrixFamily),
}

impl From<SquareMatrix> for RoleValue {
    fn from(m: SquareMatrix) -> Self {
        RoleValue::Constant(m)
    }
}

impl From<ColourMatrix> for RoleValue {
    fn from(m: ColourMatrix) -> Self {
        RoleValue::Colour(m)
    }
}

impl From<MatrixFamily> for RoleValue {
    fn from(m: MatrixFamily) -> Self {
        RoleValue::Family(m)
    }
}

pub type Roles = BTreeMap<String, RoleValue>;

pub fn roles<V: Into<RoleValue>>(pairs: impl IntoIterator<Item = (&'static str, V)>) -> Roles {
    pairs.into_iter().map(|(k, v)| (k.to_owned(), v.into())).collect()
}

fn lookup<'a>(roles: &'a Roles, name: &str) -> Result<&'a RoleValue, SystemError> {
    roles.get(name).ok_or_else(|| SystemError::MissingRole(name.to_owned()))
}

fn transformed_err(role: &str, t: Transform, e: TensorError) -> SystemError {
    match e {
        TensorError::NotInvertible => SystemError::NotInvertible { role: role.to_owned(), transform: t },
        other => SystemError::Tensor(other),
    }
}

fn constant_term(roles: &Roles, term: &Term) -> Result<SquareMatrix, SystemError> {
    match lookup(roles, &term.role)? {
        RoleValue::Constant(m) => term.transform.apply(m).map_err(|e| transformed_err(&term.role, term.transform, e)),
        _ => Err(SystemError::KindMismatch { role: term.role.clone(), expected: Kind::Const }),
    }
}

fn colour_term(roles: &Roles, term: &Term) -> Result<ColourMatrix, SystemError> {
    let m = match lookup(roles, &term.role)? {
        RoleValue::Constant(m) => ColourMatrix::standard(m.clone()),
        RoleValue::Colour(m) => m.clone(),
        RoleValue::Family(_) => {
            return Err(SystemError::KindMismatch { role: term.role.clone(), expected: Kind::Colour })
        }
    };
    term.transform.apply_colour(&m).map_err(|e| transformed_err(&term.role, term.transform, e))
}

fn family_term(roles: &Roles, term: &Term) -> Result<MatrixFamily, SystemError> {
    match lookup(roles, &term.role)? {
        RoleValue::Family(f) => f.transform(term.transform).map_err(|e| transformed_err(&term.role, term.transform, e)),
        _ => Err(SystemError::KindMismatch { role: term.role.clone(), expected: Kind::Family }),
    }
}

/// Checks the role values and returns the common local dimension.
fn check_roles(system: &SystemDef, roles: &Roles) -> Result<usize, SystemError> {
    let mut dim: Option<usize> = None;
    for name in &system.roles {
        let value = lookup(roles, name)?;
        let members: Vec<&SquareMatrix> = match value {
            RoleValue::Constant(m) => vec![m],
            RoleValue::Colour(m) => vec![&m.base],
            RoleValue::Family(f) => f.members().map(|m| &m.base).collect(),
        };
        for m in members {
            let expected = *dim.get_or_insert(m.dim());
            if m.dim() != expected {
                return Err(SystemError::DimensionMismatch { role: name.clone(), expected, found: m.dim() });
            }
            if m.local_dim().is_none() {
                return Err(SystemError::Tensor(TensorError::NotASquare(m.dim())));
            }
            if system.invertible && m.determinant().is_zero() {
                return Err(SystemError::NotInvertible { role: name.clone(), transform: Transform::Id });
            }
        }
    }
    Ok(dim.and_then(|d| SquareMatrix::<crate::scalar::Scalar>::zeros(d).local_dim()).unwrap_or(1))
}

/// Residual matrices of one equation, with the family index triple when
/// the equation is a family equation.
fn equation_residuals(eq: &Equation, roles: &Roles) -> Result<Vec<(Option<[usize; 3]>, SquareMatrix)>, SystemError> {
    let [a, b, c] = &eq.terms;
    Ok(match eq.kind {
        Kind::Const => {
            vec![(None, ybc_const(&constant_term(roles, a)?, &constant_term(roles, b)?, &constant_term(roles, c)?)?)]
        }
        Kind::Colour => {
            vec![(None, ybc_colour(&colour_term(roles, a)?, &colour_term(roles, b)?, &colour_term(roles, c)?)?)]
        }
        Kind::Family => {
            let (r, s, t) = (family_term(roles, a)?, family_term(roles, b)?, family_term(roles, c)?);
            let n = r.size();
            if s.size() != n || t.size() != n {
                return Err(SystemError::FamilyShape);
            }
            let triples: Vec<[usize; 3]> =
                (0..n).flat_map(|j1| (0..n).flat_map(move |j2| (0..n).map(move |j3| [j1, j2, j3]))).collect();
            triples
                .into_par_iter()
                .map(|[j1, j2, j3]| {
                    let m = ybc_colour(r.get(j1, j2), s.get(j1, j3), t.get(j2, j3))?;
                    Ok((Some([j1, j2, j3]), m))
                })
                .collect::<Result<Vec<_>, SystemError>>()?
        }
    })
}

/// Evaluates every equation exactly. Equations run in parallel; the report
/// keeps declaration order.
pub fn residual(system: &SystemDef, roles: &Roles) -> Result<ResidualReport, SystemError> {
    let local = check_roles(system, roles)?;
    let equations = system
        .equations
        .par_iter()
        .map(|eq| {
            let parts = equation_residuals(eq, roles)?;
            Ok(EquationResidual::collect(eq.to_string(), local, &parts))
        })
        .collect::<Result<Vec<_>, SystemError>>()?;
    Ok(ResidualReport { system: system.name.clone(), assignment: String::new(), equations })
}

pub fn verify(system: &SystemDef, roles: &Roles) -> Result<(bool, ResidualReport), SystemError> {
    let report = residual(system, roles)?;
    Ok((report.is_zero(), report))
}

/// The raw residual matrices of a system, in declaration order; family
/// equations contribute one matrix per index triple.
pub fn residual_matrices(system: &SystemDef, roles: &Roles) -> Result<Vec<SquareMatrix>, SystemError> {
    check_roles(system, roles)?;
    let mut out = Vec::new();
    for eq in &system.equations {
        out.extend(equation_residuals(eq, roles)?.into_iter().map(|(_, m)| m));
    }
    Ok(out)
}

/// `(R^{t₁})⁻¹`, reading `t₁` as the transpose on the first tensor leg.
pub fn second_inversion(r: &SquareMatrix) -> Result<SquareMatrix, TensorError> {
    partial_transpose_leg1(r)?.inverse()
}

pub fn has_second_inversion(r: &SquareMatrix) -> bool {
    partial_transpose_leg1(r).is_ok_and(|m| !m.determinant().is_zero())
}

/// Colour variables used by [`ybc_colour`].
pub fn spectral_vars() -> [Var; 3] {
    ["u1", "u2", "u3"].map(Var::new)
}

#[cfg(test)]
mod tests;
