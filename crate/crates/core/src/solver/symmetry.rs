use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::random::{random_nonzero_rational, random_sl2};
use crate::scalar::Scalar;
use crate::tensor::{conjugate, SquareMatrix, TensorError, Transform};

use super::SolverError;

/// `W → ω(T⊗T)W(T⊗T)⁻¹`, `X → ξ(T⊗S)X(T⊗S)⁻¹`, `Z → ζ(S⊗S)Z(S⊗S)⁻¹`.
#[derive(Debug, Clone, PartialEq)]
pub struct Continuous {
    pub t: SquareMatrix,
    pub s: SquareMatrix,
    pub omega: Scalar,
    pub xi: Scalar,
    pub zeta: Scalar,
}

/// The discrete maps of `(W, X, Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Discrete {
    /// `(Wᵗ, Xᵗ, Zᵗ)`
    Dsym,
    /// `(Wᵃ, X, Zᵇ)`, `a, b ∈ {id, #}`
    Dsym1(Transform, Transform),
    /// `(Wᶜ, X⁻, Zᵈ)`, `c, d ∈ {+, −}`
    Dsym2(Transform, Transform),
    /// `(Zᶜ, X⁺, Wᵈ)`, `c, d ∈ {+, −}`
    Dsym3(Transform, Transform),
}

fn code(t: Transform) -> char {
    match t {
        Transform::Id => '1',
        Transform::Sharp => '#',
        Transform::Plus => '+',
        Transform::Minus => '-',
        _ => '?',
    }
}

impl Discrete {
    fn valid(self) -> bool {
        let sharp = |t| matches!(t, Transform::Id | Transform::Sharp);
        let sign = |t| matches!(t, Transform::Plus | Transform::Minus);
        match self {
            Discrete::Dsym => true,
            Discrete::Dsym1(a, b) => sharp(a) && sharp(b),
            Discrete::Dsym2(c, d) | Discrete::Dsym3(c, d) => sign(c) && sign(d),
        }
    }

    pub fn all() -> Vec<Discrete> {
        use Transform::{Id, Minus, Plus, Sharp};
        let mut out = vec![Discrete::Dsym];
        for a in [Id, Sharp] {
            for b in [Id, Sharp] {
                out.push(Discrete::Dsym1(a, b));
            }
        }
        for c in [Plus, Minus] {
            for d in [Plus, Minus] {
                out.push(Discrete::Dsym2(c, d));
                out.push(Discrete::Dsym3(c, d));
            }
        }
        out
    }
}

impl fmt::Display for Discrete {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Discrete::Dsym => f.write_str("dsym"),
            Discrete::Dsym1(a, b) => write!(f, "dsym1:{}{}", code(a), code(b)),
            Discrete::Dsym2(c, d) => write!(f, "dsym2:{}{}", code(c), code(d)),
            Discrete::Dsym3(c, d) => write!(f, "dsym3:{}{}", code(c), code(d)),
        }
    }
}

impl FromStr for Discrete {
    type Err = SolverError;

    /// `dsym`, `dsym1:ab` with `a, b ∈ {1, #}`, `dsym2:cd` and `dsym3:cd`
    /// with `c, d ∈ {+, -}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SolverError::BadWord(s.to_owned());
        let s = s.trim();
        if s == "dsym" {
            return Ok(Discrete::Dsym);
        }
        let (head, codes) = s.split_once(':').ok_or_else(bad)?;
        let parse = |c: char| match c {
            '1' => Some(Transform::Id),
            '#' => Some(Transform::Sharp),
            '+' => Some(Transform::Plus),
            '-' => Some(Transform::Minus),
            _ => None,
        };
        let codes: Vec<Transform> = codes.chars().map(parse).collect::<Option<_>>().ok_or_else(bad)?;
        let [x, y] = codes[..] else { return Err(bad()) };
        let op = match head {
            "dsym1" => Discrete::Dsym1(x, y),
            "dsym2" => Discrete::Dsym2(x, y),
            "dsym3" => Discrete::Dsym3(x, y),
            _ => return Err(bad()),
        };
        if op.valid() {
            Ok(op)
        } else {
            Err(bad())
        }
    }
}

/// Continuous part first, then the discrete word left to right.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TransformSpec {
    pub continuous: Option<Continuous>,
    pub word: Vec<Discrete>,
}

impl TransformSpec {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Parses a comma- or space-separated word such as `dsym3:++, dsym`.
    pub fn parse_word(text: &str) -> Result<Self, SolverError> {
        let word = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|w| !w.is_empty())
            .map(str::parse)
            .collect::<Result<_, _>>()?;
        Ok(TransformSpec { continuous: None, word })
    }

    pub fn word_text(&self) -> String {
        self.word.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }

    /// Random SL(2) matrices, random nonzero rational scales and a random
    /// word of length at most 4.
    pub fn random(rng: &mut impl Rng) -> Self {
        let ops = Discrete::all();
        let len = rng.gen_range(0..=4);
        TransformSpec {
            continuous: Some(Continuous {
                t: random_sl2(rng),
                s: random_sl2(rng),
                omega: random_nonzero_rational(rng),
                xi: random_nonzero_rational(rng),
                zeta: random_nonzero_rational(rng),
            }),
            word: (0..len).map(|_| ops[rng.gen_range(0..ops.len())]).collect(),
        }
    }
}

const NAMES: [&str; 3] = ["W", "X", "Z"];

fn step(m: &SquareMatrix, t: Transform, slot: usize, op: &str) -> Result<SquareMatrix, SolverError> {
    t.apply(m).map_err(|e| match e {
        TensorError::NotInvertible => {
            SolverError::NotInvertible { matrix: NAMES[slot].to_owned(), step: format!("{op} ({}{})", NAMES[slot], t.symbol()) }
        }
        other => SolverError::Tensor(other),
    })
}

pub fn apply_transform(triple: &[SquareMatrix; 3], spec: &TransformSpec) -> Result<[SquareMatrix; 3], SolverError> {
    let [mut w, mut x, mut z] = triple.clone();
    if let Some(c) = &spec.continuous {
        let conj = |m: &SquareMatrix, l: &SquareMatrix, r: &SquareMatrix, k: &Scalar, slot: usize| {
            conjugate(m, l, r, k).map_err(|e| match e {
                TensorError::NotInvertible => {
                    SolverError::NotInvertible { matrix: NAMES[slot].to_owned(), step: "continuous".into() }
                }
                other => SolverError::Tensor(other),
            })
        };
        w = conj(&w, &c.t, &c.t, &c.omega, 0)?;
        x = conj(&x, &c.t, &c.s, &c.xi, 1)?;
        z = conj(&z, &c.s, &c.s, &c.zeta, 2)?;
    }
    for op in &spec.word {
        let name = op.to_string();
        (w, x, z) = match *op {
            Discrete::Dsym => (w.transpose(), x.transpose(), z.transpose()),
            Discrete::Dsym1(a, b) => (step(&w, a, 0, &name)?, x, step(&z, b, 2, &name)?),
            Discrete::Dsym2(c, d) => {
                (step(&w, c, 0, &name)?, step(&x, Transform::Minus, 1, &name)?, step(&z, d, 2, &name)?)
            }
            Discrete::Dsym3(c, d) => {
                (step(&z, c, 2, &name)?, step(&x, Transform::Plus, 1, &name)?, step(&w, d, 0, &name)?)
            }
        };
    }
    Ok([w, x, z])
}
