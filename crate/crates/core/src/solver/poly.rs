use std::collections::BTreeSet;
use std::fmt;

use crate::expr;
use crate::scalar::{Assignment, Monomial, Polynomial, Scalar, Var};
use crate::tensor::{ybc_const, SquareMatrix};

use super::{SolutionSpace, SolverError};

/// Polynomial equations `p = 0` in declared unknowns and parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySystem {
    pub unknowns: Vec<Var>,
    pub params: Vec<Var>,
    pub equations: Vec<Polynomial>,
}

/// Divides out the monomial content in the parameters, clears negative
/// powers of unknowns and makes the leading coefficient 1. Unknowns may
/// vanish, so their nonnegative content is kept.
fn normalize(p: Polynomial, unknowns: &[Var]) -> Polynomial {
    let content = p.monomial_content();
    let shift = Monomial::from_pairs(
        content.exponents().iter().map(|&(v, e)| (v, if unknowns.contains(&v) { e.min(0) } else { e })),
    );
    let p = p.mul_monomial(&shift.inv());
    match p.leading() {
        Some((_, c)) => {
            let inv = c.inv().expect("nonzero leading coefficient");
            p.scale(&inv)
        }
        None => p,
    }
}

impl PolySystem {
    /// Collects the nonzero entries of residual matrices: numerators of
    /// rational entries, normalized and deduplicated in first-seen order.
    pub fn from_residuals<'a>(
        unknowns: Vec<Var>,
        residuals: impl IntoIterator<Item = &'a SquareMatrix>,
    ) -> PolySystem {
        let mut equations: Vec<Polynomial> = Vec::new();
        let mut vars = BTreeSet::new();
        for m in residuals {
            for e in m.entries() {
                if e.is_zero() {
                    continue;
                }
                let p = normalize(e.numerator(), &unknowns);
                vars.extend(p.vars());
                if !equations.contains(&p) {
                    equations.push(p);
                }
            }
        }
        let params = vars.into_iter().filter(|v| !unknowns.contains(v)).collect();
        PolySystem { unknowns, params, equations }
    }

    /// True when every equation is identically zero.
    pub fn is_trivial(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn evaluate(&self, at: &Assignment) -> Result<Vec<Scalar>, SolverError> {
        Ok(self
            .equations
            .iter()
            .map(|p| Scalar::from_polynomial(p.clone()).substitute(at))
            .collect::<Result<_, _>>()?)
    }

    /// Whether every equation vanishes identically after substituting `at`.
    pub fn vanishes_at(&self, at: &Assignment) -> Result<bool, SolverError> {
        Ok(self.evaluate(at)?.iter().all(Scalar::is_zero))
    }

    pub fn parse(text: &str) -> Result<PolySystem, SolverError> {
        let mut unknowns = None;
        let mut params = Vec::new();
        let mut equations = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let bad = |message: &str| SolverError::PolyFormat { line: k + 1, message: message.to_owned() };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("unknowns") {
                unknowns = Some(rest.split_whitespace().map(Var::new).collect::<Vec<_>>());
            } else if let Some(rest) = line.strip_prefix("params") {
                params = rest.split_whitespace().map(Var::new).collect();
            } else {
                let lhs = line.strip_suffix("= 0").ok_or_else(|| bad("expected '<expr> = 0'"))?;
                let s = expr::parse_scalar(lhs.trim()).map_err(|e| bad(&e.to_string()))?;
                let p = s.to_polynomial().ok_or_else(|| bad("not a polynomial"))?;
                equations.push(p);
            }
        }
        let unknowns = unknowns.ok_or(SolverError::PolyFormat { line: 0, message: "missing 'unknowns' line".into() })?;
        Ok(PolySystem { unknowns, params, equations })
    }
}

impl fmt::Display for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |v: &[Var]| v.iter().map(|x| x.name()).collect::<Vec<_>>().join(" ");
        writeln!(f, "unknowns {}", names(&self.unknowns))?;
        if !self.params.is_empty() {
            writeln!(f, "params {}", names(&self.params))?;
        }
        for p in &self.equations {
            writeln!(f, "{} = 0", Scalar::from_polynomial(p.clone()))?;
        }
        Ok(())
    }
}

/// `Z = Σ cᵢ·basisᵢ` with fresh unknowns `c1, c2, …`; emits the entries of
/// `[Z,Z,Z]` without solving them.
pub fn filter_ybe(space: &SolutionSpace) -> PolySystem {
    let unknowns: Vec<Var> = (1..=space.dim()).map(|k| Var::new(&format!("c{k}"))).collect();
    let mut z = SquareMatrix::<Scalar>::zeros(space.n);
    for (c, b) in unknowns.iter().zip(space.basis_scalar()) {
        z = z.add(&b.scale(&Scalar::var(*c))).expect("same dimension");
    }
    let res = ybc_const(&z, &z, &z).expect("square dimension");
    PolySystem::from_residuals(unknowns, [&res])
}

/// One cell of an `X` pattern.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Zero,
    Unknown(Var),
    Expr(Scalar),
}

/// Cells of `X` plus the declared unknowns; expression cells may also
/// mention unknowns.
#[derive(Debug, Clone, PartialEq)]
pub struct Pattern {
    pub cells: Vec<Vec<Cell>>,
    pub unknowns: Vec<Var>,
}

impl Pattern {
    /// Every entry an unknown `x11, x12, …` (1-based row and column).
    pub fn full(n: usize) -> Pattern {
        let cells: Vec<Vec<Cell>> = (0..n)
            .map(|i| (0..n).map(|j| Cell::Unknown(Var::new(&format!("x{}{}", i + 1, j + 1)))).collect())
            .collect();
        let unknowns = cells
            .iter()
            .flatten()
            .filter_map(|c| match c {
                Cell::Unknown(v) => Some(*v),
                _ => None,
            })
            .collect();
        Pattern { cells, unknowns }
    }

    /// The shape of `m`: entries that are exactly one of `unknowns` become
    /// unknown cells, zeros stay zero, the rest are expressions.
    pub fn from_matrix(m: &SquareMatrix, unknowns: &[Var]) -> Pattern {
        let cells = m
            .rows()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        if e.is_zero() {
                            return Cell::Zero;
                        }
                        unknowns
                            .iter()
                            .find(|v| *e == Scalar::var(**v))
                            .map_or_else(|| Cell::Expr(e.clone()), |v| Cell::Unknown(*v))
                    })
                    .collect()
            })
            .collect();
        Pattern { cells, unknowns: unknowns.to_vec() }
    }

    pub fn matrix(&self) -> Result<SquareMatrix, SolverError> {
        let rows = self
            .cells
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| match c {
                        Cell::Zero => Scalar::zero(),
                        Cell::Unknown(v) => Scalar::var(*v),
                        Cell::Expr(e) => e.clone(),
                    })
                    .collect()
            })
            .collect();
        Ok(SquareMatrix::from_rows(rows)?)
    }
}

/// Entries of `[W,X,X]` with `X` given by `pattern`.
pub fn emit_x_system(w: &SquareMatrix, pattern: &Pattern) -> Result<PolySystem, SolverError> {
    let x = pattern.matrix()?;
    let res = ybc_const(w, &x, &x)?;
    Ok(PolySystem::from_residuals(pattern.unknowns.clone(), [&res]))
}
