//! Entry-expression grammar.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ['^' ['-'] int]
//! atom   := int | 'i' | identifier | '(' expr ')' | '-' factor
//! ```
//!
//! `i` is the imaginary unit and never an identifier. Implicit
//! multiplication is not accepted, and exponents must be integer literals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::scalar::{GaussianRational, Scalar, ScalarError, Var};

const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprAst {
    Number(BigInt),
    ImaginaryUnit,
    Var(String),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    Neg(Box<ExprAst>),
    Pow(Box<ExprAst>, i32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: expected {}", .expected.join(" or "))]
    Syntax { offset: usize, expected: Vec<&'static str> },
    #[error("non-integer exponent at byte {offset}")]
    NonIntegerExponent { offset: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl ExprError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            ExprError::Syntax { offset, .. } | ExprError::NonIntegerExponent { offset } => Some(*offset),
            ExprError::Scalar(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    I,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        let start = pos;
        let tok = match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                pos += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let n: BigInt = text[start..pos].parse().expect("digits");
                out.push((Tok::Int(n), start));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                    pos += 1;
                }
                let word = &text[start..pos];
                out.push((if word == "i" { Tok::I } else { Tok::Ident(word.to_owned()) }, start));
                continue;
            }
            _ => {
                return Err(ExprError::Syntax {
                    offset: start,
                    expected: vec!["number", "identifier", "operator", "parenthesis"],
                })
            }
        };
        out.push((tok, start));
        pos += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    depth: usize,
}

const ATOM_START: &[&str] = &["number", "identifier", "'i'", "'('", "'-'"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, expected: &[&'static str]) -> ExprError {
        ExprError::Syntax { offset: self.offset(), expected: expected.to_vec() }
    }

    fn enter(&mut self) -> Result<(), ExprError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err(&["shallower nesting"]));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<ExprAst, ExprError> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ExprAst, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = ExprAst::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<ExprAst, ExprError> {
        self.enter()?;
        let base = self.atom()?;
        let out = if *self.peek() == Tok::Caret {
            self.bump();
            let negative = if *self.peek() == Tok::Minus {
                self.bump();
                true
            } else {
                false
            };
            let at = self.offset();
            match self.bump() {
                Tok::Int(n) => {
                    let n = if negative { -n } else { n };
                    let e = i32::try_from(n).map_err(|_| ExprError::Syntax {
                        offset: at,
                        expected: vec!["exponent within 32-bit range"],
                    })?;
                    ExprAst::Pow(Box::new(base), e)
                }
                Tok::Ident(_) | Tok::I | Tok::LParen => return Err(ExprError::NonIntegerExponent { offset: at }),
                _ => return Err(ExprError::Syntax { offset: at, expected: vec!["integer exponent"] }),
            }
        } else {
            base
        };
        self.depth -= 1;
        Ok(out)
    }

    fn atom(&mut self) -> Result<ExprAst, ExprError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(ExprAst::Number(n))
            }
            Tok::I => {
                self.bump();
                Ok(ExprAst::ImaginaryUnit)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(ExprAst::Var(name))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.err(&["')'", "operator"]));
                }
                self.bump();
                Ok(inner)
            }
            Tok::Minus => {
                self.bump();
                Ok(ExprAst::Neg(Box::new(self.factor()?)))
            }
            _ => Err(self.err(ATOM_START)),
        }
    }
}

/// Parses one expression; trailing input is an error.
pub fn parse(text: &str) -> Result<ExprAst, ExprError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, depth: 0 };
    let ast = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.err(&["operator", "end of input"]));
    }
    Ok(ast)
}

/// Evaluates to the lowest tower level that holds the value. Division by a
/// monomial stays a Laurent polynomial; any other non-constant divisor gives
/// a rational function.
pub fn eval(ast: &ExprAst) -> Result<Scalar, ExprError> {
    Ok(match ast {
        ExprAst::Number(n) => Scalar::Const(GaussianRational::real(BigRational::from_integer(n.clone()))),
        ExprAst::ImaginaryUnit => Scalar::i(),
        ExprAst::Var(name) => Scalar::var(Var::new(name)),
        ExprAst::Add(a, b) => &eval(a)? + &eval(b)?,
        ExprAst::Sub(a, b) => &eval(a)? - &eval(b)?,
        ExprAst::Mul(a, b) => &eval(a)? * &eval(b)?,
        ExprAst::Div(a, b) => eval(a)?.div(&eval(b)?)?,
        ExprAst::Neg(a) => -eval(a)?,
        ExprAst::Pow(a, e) => eval(a)?.pow(*e)?,
    })
}

/// `eval(parse(text))`.
pub fn parse_scalar(text: &str) -> Result<Scalar, ExprError> {
    eval(&parse(text)?)
}

impl ExprAst {
    /// Identifiers mentioned anywhere in the tree.
    pub fn identifiers(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_identifiers(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_identifiers(&self, out: &mut Vec<String>) {
        match self {
            ExprAst::Var(n) => out.push(n.clone()),
            ExprAst::Number(_) | ExprAst::ImaginaryUnit => {}
            ExprAst::Neg(a) | ExprAst::Pow(a, _) => a.collect_identifiers(out),
            ExprAst::Add(a, b) | ExprAst::Sub(a, b) | ExprAst::Mul(a, b) | ExprAst::Div(a, b) => {
                a.collect_identifiers(out);
                b.collect_identifiers(out);
            }
        }
    }
}

/// Fully parenthesized rendering, mainly for diagnostics.
impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprAst::Number(n) => write!(f, "{n}"),
            ExprAst::ImaginaryUnit => f.write_str("i"),
            ExprAst::Var(v) => f.write_str(v),
            ExprAst::Add(a, b) => write!(f, "({a} + {b})"),
            ExprAst::Sub(a, b) => write!(f, "({a} - {b})"),
            ExprAst::Mul(a, b) => write!(f, "({a} * {b})"),
            ExprAst::Div(a, b) => write!(f, "({a} / {b})"),
            ExprAst::Neg(a) => write!(f, "(-{a})"),
            ExprAst::Pow(a, e) => write!(f, "({a}^{e})"),
        }
    }
}
