//! The colour-dependent reflection block `A, B = C‡, C, D`.
//!
//! The printed `D` lacks an operator between its last two terms. Each
//! reading below is evaluated on all eight spectral equations, alone and
//! shifted by `±P`; the first reading that zeroes every equation is the
//! correction.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::catalog;
use crate::scalar::Scalar;
use crate::tensor::{ColourMatrix, SquareMatrix, Transform};

use super::{residual, roles, SystemDef, SystemError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reading {
    /// `(u-v)1 + c₁σ₋⊗σ₊ + c₂σ₊⊗σ₋`
    Plus,
    /// `(u-v)1 + c₁σ₋⊗σ₊ - c₂σ₊⊗σ₋`
    Minus,
    /// `(u-v)1 + c₁c₂(σ₋⊗σ₊)(σ₊⊗σ₋)`
    Product,
}

impl Reading {
    pub const ALL: [Reading; 3] = [Reading::Plus, Reading::Minus, Reading::Product];

    pub fn name(self) -> &'static str {
        match self {
            Reading::Plus => "plus",
            Reading::Minus => "minus",
            Reading::Product => "product",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub reading: Reading,
    /// Multiple of `P` added to the reading.
    pub shift: i64,
    pub matrix: ColourMatrix,
    /// Nonzero residual count per equation.
    pub nonzero: Vec<usize>,
}

impl Candidate {
    pub fn label(&self) -> String {
        match self.shift {
            0 => self.reading.name().to_owned(),
            1 => format!("{} + P", self.reading.name()),
            -1 => format!("{} - P", self.reading.name()),
            k => format!("{} + {k}P", self.reading.name()),
        }
    }

    pub fn solves(&self) -> bool {
        self.nonzero.iter().all(|&n| n == 0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Investigation {
    pub equations: Vec<String>,
    pub candidates: Vec<Candidate>,
}

impl Investigation {
    /// First solving candidate: unshifted readings are tried before shifted ones.
    pub fn correction(&self) -> Option<&Candidate> {
        self.candidates.iter().find(|c| c.solves())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("spectral reflection block\n");
        out.push_str("A = (u-v)1 + P, C = v1 + s-(x)s+, B = C^dagger\n");
        out.push_str("D = (u-v)1 + (1-u/v) s-(x)s+ <op> (1-v/u) s+(x)s-\n");
        out.push_str("nonzero residual entries per equation:\n");
        let width = self.candidates.iter().map(|c| c.label().len()).max().unwrap_or(0);
        let _ = write!(out, "{:width$}", "");
        for e in &self.equations {
            let _ = write!(out, "  {e}");
        }
        out.push('\n');
        for c in &self.candidates {
            let _ = write!(out, "{:width$}", c.label());
            for (e, n) in self.equations.iter().zip(&c.nonzero) {
                let _ = write!(out, "  {n:>w$}", w = e.chars().count());
            }
            out.push('\n');
        }
        match self.correction() {
            Some(c) => {
                let _ = writeln!(out, "correction: D = {}", c.label());
                for row in c.matrix.base.rows() {
                    let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                    let _ = writeln!(out, "  [{}]", cells.join(", "));
                }
            }
            None => out.push_str("correction: none found\n"),
        }
        out
    }
}

fn sigma_plus() -> SquareMatrix {
    SquareMatrix::from_i64_rows(&[&[0, 1], &[0, 0]])
}

fn sigma_minus() -> SquareMatrix {
    SquareMatrix::from_i64_rows(&[&[0, 0], &[1, 0]])
}

/// The reading of the printed `D` plus `shift·P`.
pub fn d_candidate(reading: Reading, shift: i64) -> ColourMatrix {
    let (u, v) = (Scalar::symbol("u"), Scalar::symbol("v"));
    let one = Scalar::one();
    let c1 = &one - &u.div(&v).expect("v != 0");
    let c2 = &one - &v.div(&u).expect("u != 0");
    let mp = sigma_minus().kron(&sigma_plus());
    let pm = sigma_plus().kron(&sigma_minus());
    let id = SquareMatrix::identity(4).scale(&(&u - &v));
    let tail = match reading {
        Reading::Plus => mp.scale(&c1).add(&pm.scale(&c2)),
        Reading::Minus => mp.scale(&c1).sub(&pm.scale(&c2)),
        Reading::Product => Ok(mp.mul(&pm).expect("4x4").scale(&(&c1 * &c2))),
    }
    .expect("4x4");
    let d = id.add(&tail).and_then(|d| d.add(&SquareMatrix::flip(2).scale(&Scalar::from_i64(shift)))).expect("4x4");
    ColourMatrix::standard(d)
}

fn block() -> (ColourMatrix, ColourMatrix, ColourMatrix) {
    let get = |n: &str| {
        catalog::get(n).and_then(|m| m.instantiate_colour(&Default::default())).expect("colour catalog entry")
    };
    let c = get("C");
    let b = Transform::Dagger.apply_colour(&c).expect("dagger");
    (get("A"), b, c)
}

pub fn investigate() -> Result<Investigation, SystemError> {
    let system = SystemDef::spectral_reflection();
    let (a, b, c) = block();
    let specs: Vec<(Reading, i64)> =
        [0, 1, -1].into_iter().flat_map(|s| Reading::ALL.into_iter().map(move |r| (r, s))).collect();
    let candidates = specs
        .into_par_iter()
        .map(|(reading, shift)| {
            let d = d_candidate(reading, shift);
            let rep = residual(
                &system,
                &roles([("A", a.clone()), ("B", b.clone()), ("C", c.clone()), ("D", d.clone())]),
            )?;
            Ok(Candidate { reading, shift, matrix: d, nonzero: rep.equations.iter().map(|e| e.nonzero).collect() })
        })
        .collect::<Result<Vec<_>, SystemError>>()?;
    Ok(Investigation { equations: system.equations.iter().map(ToString::to_string).collect(), candidates })
}
