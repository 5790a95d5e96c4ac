//! Plain-text matrix files.
//!
//! ```text
//! # optional comments
//! dim 4
//! vars q s t
//! colour u v
//! q, 0, 0, 0
//! ...
//! ```
//!
//! `vars` and `colour` are optional. When `vars` is present every identifier
//! in the entries must be declared there or as a colour variable.

use thiserror::Error;

use crate::expr::{self, ExprError};
use crate::scalar::Var;

use super::{ColourMatrix, SquareMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}, column {column}: {source}")]
    Entry { line: usize, column: usize, source: ExprError },
    #[error("missing 'dim' line")]
    MissingDim,
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("line {line}: variable '{name}' is not declared")]
    UndeclaredVariable { line: usize, name: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFile {
    pub matrix: SquareMatrix,
    pub vars: Option<Vec<Var>>,
    pub colour: Option<(Var, Var)>,
}

impl MatrixFile {
    pub fn into_colour(self) -> Option<ColourMatrix> {
        let (u, v) = self.colour?;
        Some(ColourMatrix::new(self.matrix, u, v))
    }
}

/// Renders `m`; parameters are listed in registration order, colour
/// variables excluded.
pub fn write_matrix(m: &SquareMatrix, colour: Option<(Var, Var)>, title: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(t) = title {
        for line in t.lines() {
            out.push_str(&format!("# {line}\n"));
        }
    }
    out.push_str(&format!("dim {}\n", m.dim()));
    let params: Vec<Var> =
        m.vars().into_iter().filter(|v| colour.is_none_or(|(a, b)| *v != a && *v != b)).collect();
    if !params.is_empty() {
        let names: Vec<String> = params.iter().map(|v| v.name()).collect();
        out.push_str(&format!("vars {}\n", names.join(" ")));
    }
    if let Some((u, v)) = colour {
        out.push_str(&format!("colour {u} {v}\n"));
    }
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(", "));
        out.push('\n');
    }
    out
}

pub fn write_colour(m: &ColourMatrix, title: Option<&str>) -> String {
    write_matrix(&m.base, Some((m.u, m.v)), title)
}

fn is_identifier(w: &str) -> bool {
    let mut chars = w.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && w != "i"
}

pub fn parse_matrix(text: &str) -> Result<MatrixFile, FormatError> {
    let mut dim: Option<usize> = None;
    let mut vars: Option<Vec<Var>> = None;
    let mut colour = None;
    let mut rows = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut words = trimmed.split_whitespace();
        let head = words.next().unwrap_or("");
        if dim.is_none() {
            if head != "dim" {
                return Err(FormatError::MissingDim);
            }
            let n = words
                .next()
                .and_then(|w| w.parse::<usize>().ok())
                .filter(|&n| n > 0)
                .ok_or_else(|| FormatError::Malformed { line, message: "expected 'dim <n>' with n > 0".into() })?;
            if words.next().is_some() {
                return Err(FormatError::Malformed { line, message: "trailing input after dimension".into() });
            }
            dim = Some(n);
            continue;
        }
        if rows.is_empty() && (head == "vars" || head == "colour") {
            let names: Vec<&str> = words.collect();
            if let Some(bad) = names.iter().find(|w| !is_identifier(w)) {
                return Err(FormatError::Malformed { line, message: format!("'{bad}' is not an identifier") });
            }
            if head == "vars" {
                if vars.is_some() {
                    return Err(FormatError::Malformed { line, message: "duplicate 'vars' line".into() });
                }
                vars = Some(names.iter().map(|n| Var::new(n)).collect());
            } else {
                if colour.is_some() || names.len() != 2 {
                    return Err(FormatError::Malformed { line, message: "expected 'colour <u> <v>' once".into() });
                }
                colour = Some((Var::new(names[0]), Var::new(names[1])));
            }
            continue;
        }
        let n = dim.expect("dim parsed");
        let mut cells = Vec::with_capacity(n);
        let mut column = 0;
        for piece in content.split(',') {
            let ast = expr::parse(piece).map_err(|source| {
                let column = column + source.offset().unwrap_or(0) + 1;
                FormatError::Entry { line, column, source }
            })?;
            if let Some(declared) = &vars {
                for name in ast.identifiers() {
                    let var = Var::new(&name);
                    let in_colour = colour.is_some_and(|(u, v)| var == u || var == v);
                    if !declared.contains(&var) && !in_colour {
                        return Err(FormatError::UndeclaredVariable { line, name });
                    }
                }
            }
            let value = expr::eval(&ast).map_err(|source| FormatError::Entry { line, column: column + 1, source })?;
            cells.push(value);
            column += piece.len() + 1;
        }
        if cells.len() != n {
            return Err(FormatError::Malformed { line, message: format!("expected {n} entries, found {}", cells.len()) });
        }
        rows.push(cells);
    }
    let n = dim.ok_or(FormatError::MissingDim)?;
    if rows.len() != n {
        return Err(FormatError::RowCount { expected: n, found: rows.len() });
    }
    let matrix = SquareMatrix::from_rows(rows).expect("row lengths checked");
    Ok(MatrixFile { matrix, vars, colour })
}
