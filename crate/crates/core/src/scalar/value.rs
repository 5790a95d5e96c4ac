use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::gaussian::GaussianRational;
use super::polynomial::{Monomial, Polynomial};
use super::rational::RationalFunction;
use super::ring::{Field, Ring};
use super::vars::Var;
use super::ScalarError;

/// An exact value at the lowest level of the tower that holds it:
/// Gaussian rational, Laurent polynomial, or rational function.
///
/// Values are kept normalized: a constant polynomial is stored as `Const`, a
/// rational function whose denominator cancels to one as `Poly`.
#[derive(Clone)]
pub enum Scalar {
    Const(GaussianRational),
    Poly(Polynomial),
    Rat(RationalFunction),
}

impl Scalar {
    pub fn from_i64(n: i64) -> Self {
        Scalar::Const(GaussianRational::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Const(GaussianRational::ratio(num, den))
    }

    pub fn i() -> Self {
        Scalar::Const(GaussianRational::i())
    }

    pub fn var(v: Var) -> Self {
        Scalar::Poly(Polynomial::var(v))
    }

    /// Shorthand for `Scalar::var(Var::new(name))`.
    pub fn symbol(name: &str) -> Self {
        Scalar::var(Var::new(name))
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        match p.as_constant() {
            Some(c) => Scalar::Const(c),
            None => Scalar::Poly(p),
        }
    }

    pub fn from_rational(r: RationalFunction) -> Self {
        match r.as_polynomial() {
            Some(p) => Scalar::from_polynomial(p.clone()),
            None => Scalar::Rat(r),
        }
    }

    pub fn as_const(&self) -> Option<&GaussianRational> {
        match self {
            Scalar::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Scalar::Const(_))
    }

    /// Polynomial view; `None` for a genuine rational function.
    pub fn to_polynomial(&self) -> Option<Polynomial> {
        match self {
            Scalar::Const(c) => Some(Polynomial::constant(c.clone())),
            Scalar::Poly(p) => Some(p.clone()),
            Scalar::Rat(_) => None,
        }
    }

    /// Numerator polynomial; vanishes exactly when `self` does.
    pub fn numerator(&self) -> Polynomial {
        match self {
            Scalar::Rat(r) => r.numer().clone(),
            other => other.to_polynomial().expect("non-rational scalar"),
        }
    }

    fn to_rational(&self) -> RationalFunction {
        match self {
            Scalar::Const(c) => RationalFunction::from_polynomial(Polynomial::constant(c.clone())),
            Scalar::Poly(p) => RationalFunction::from_polynomial(p.clone()),
            Scalar::Rat(r) => r.clone(),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        match self {
            Scalar::Const(_) => BTreeSet::new(),
            Scalar::Poly(p) => p.vars(),
            Scalar::Rat(r) => {
                let mut v = r.numer().vars();
                v.extend(r.denom().vars());
                v
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Const(c) => c.is_zero(),
            Scalar::Poly(p) => p.is_zero(),
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Const(c) => c.inv().map(Scalar::Const).ok_or(ScalarError::DivisionByZero),
            Scalar::Poly(p) => {
                if let Some((m, c)) = p.as_monomial() {
                    let ci = c.inv().ok_or(ScalarError::DivisionByZero)?;
                    return Ok(Scalar::Poly(Polynomial::term(ci, m.inv())));
                }
                let one = Polynomial::constant(num_traits::One::one());
                RationalFunction::new(one, p.clone()).map(Scalar::from_rational)
            }
            Scalar::Rat(r) => r.inv().map(Scalar::from_rational),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow(&self, exp: i32) -> Result<Scalar, ScalarError> {
        if exp < 0 {
            return self.inv()?.pow(exp.checked_neg().expect("exponent overflow"));
        }
        let e = exp as u32;
        Ok(match self {
            Scalar::Const(c) => Scalar::Const(c.pow(exp).expect("nonnegative power")),
            Scalar::Poly(p) => Scalar::from_polynomial(p.pow(e)),
            Scalar::Rat(r) => {
                let num = r.numer().pow(e);
                let den = r.denom().pow(e);
                Scalar::from_rational(RationalFunction::new(num, den)?)
            }
        })
    }

    /// Image under the ring homomorphism sending each assigned variable to
    /// its value; unassigned variables stay symbolic. Substitution is
    /// simultaneous.
    pub fn substitute(&self, assignment: &Assignment) -> Result<Scalar, ScalarError> {
        if assignment.is_empty() {
            return Ok(self.clone());
        }
        match self {
            Scalar::Const(_) => Ok(self.clone()),
            Scalar::Poly(p) => substitute_poly(p, assignment),
            Scalar::Rat(r) => {
                let num = substitute_poly(r.numer(), assignment)?;
                let den = substitute_poly(r.denom(), assignment)?;
                if den.is_zero() {
                    return Err(ScalarError::DenominatorVanishes);
                }
                num.div(&den)
            }
        }
    }
}

fn substitute_poly(p: &Polynomial, assignment: &Assignment) -> Result<Scalar, ScalarError> {
    let mut acc = Scalar::zero();
    for (m, c) in p.terms() {
        let mut value = Scalar::Const(c.clone());
        let mut kept = Vec::new();
        for &(v, e) in m.exponents() {
            match assignment.get(v) {
                Some(x) => {
                    if e < 0 && x.is_zero() {
                        return Err(ScalarError::DivisionByZero);
                    }
                    value = value.mul_ref(&x.pow(e)?);
                }
                None => kept.push((v, e)),
            }
        }
        if !kept.is_empty() {
            let mono = Scalar::Poly(Polynomial::term(num_traits::One::one(), Monomial::from_pairs(kept)));
            value = value.mul_ref(&mono);
        }
        acc = acc.add_ref(&value);
    }
    Ok(acc)
}

fn binary(
    a: &Scalar,
    b: &Scalar,
    c: impl Fn(&GaussianRational, &GaussianRational) -> GaussianRational,
    p: impl Fn(&Polynomial, &Polynomial) -> Polynomial,
    r: impl Fn(&RationalFunction, &RationalFunction) -> RationalFunction,
) -> Scalar {
    match (a, b) {
        (Scalar::Const(x), Scalar::Const(y)) => Scalar::Const(c(x, y)),
        (Scalar::Rat(_), _) | (_, Scalar::Rat(_)) => Scalar::from_rational(r(&a.to_rational(), &b.to_rational())),
        _ => Scalar::from_polynomial(p(
            &a.to_polynomial().expect("polynomial"),
            &b.to_polynomial().expect("polynomial"),
        )),
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::Const(GaussianRational::zero())
    }
    fn one() -> Self {
        Scalar::Const(num_traits::One::one())
    }
    fn from_i64(n: i64) -> Self {
        Scalar::from_i64(n)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn is_one(&self) -> bool {
        matches!(self, Scalar::Const(c) if Ring::is_one(c))
    }
    fn add_ref(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        binary(self, o, |x, y| x + y, |x, y| x.add(y), |x, y| x.add(y))
    }
    fn sub_ref(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        binary(self, o, |x, y| x - y, |x, y| x.sub(y), |x, y| x.sub(y))
    }
    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if let Scalar::Const(c) = self {
            if Ring::is_one(c) {
                return o.clone();
            }
        }
        if let Scalar::Const(c) = o {
            if Ring::is_one(c) {
                return self.clone();
            }
        }
        binary(self, o, |x, y| x * y, |x, y| x.mul(y), |x, y| x.mul(y))
    }
    fn neg_ref(&self) -> Self {
        match self {
            Scalar::Const(c) => Scalar::Const(-c),
            Scalar::Poly(p) => Scalar::Poly(p.neg()),
            Scalar::Rat(r) => Scalar::Rat(r.neg()),
        }
    }
}

impl Field for Scalar {
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        <Scalar as Ring>::zero()
    }
    pub fn one() -> Self {
        <Scalar as Ring>::one()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Const(a), Scalar::Const(b)) => a == b,
            (Scalar::Poly(a), Scalar::Poly(b)) => a == b,
            (Scalar::Const(_), Scalar::Poly(_)) | (Scalar::Poly(_), Scalar::Const(_)) => false,
            _ => self.sub_ref(other).is_zero(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Const(c) => write!(f, "{c}"),
            Scalar::Poly(p) => write!(f, "{p}"),
            Scalar::Rat(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_i64(n)
    }
}

impl From<GaussianRational> for Scalar {
    fn from(c: GaussianRational) -> Self {
        Scalar::Const(c)
    }
}

impl From<Polynomial> for Scalar {
    fn from(p: Polynomial) -> Self {
        Scalar::from_polynomial(p)
    }
}

macro_rules! scalar_ops {
    ($tr:ident, $m:ident, $f:ident) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$f(o)
            }
        }
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$f(&o)
            }
        }
    };
}
scalar_ops!(Add, add, add_ref);
scalar_ops!(Sub, sub, sub_ref);
scalar_ops!(Mul, mul, mul_ref);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

/// Map from variable to value used by [`Scalar::substitute`].
#[derive(Clone, Default, PartialEq)]
pub struct Assignment(BTreeMap<Var, Scalar>);

impl Assignment {
    pub fn new() -> Self {
        Assignment(BTreeMap::new())
    }

    pub fn insert(&mut self, v: Var, value: Scalar) -> Option<Scalar> {
        self.0.insert(v, value)
    }

    /// Builder form of [`Assignment::insert`] keyed by name.
    pub fn with(mut self, name: &str, value: impl Into<Scalar>) -> Self {
        self.0.insert(Var::new(name), value.into());
        self
    }

    pub fn get(&self, v: Var) -> Option<&Scalar> {
        self.0.get(&v)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.0.contains_key(&v)
    }

    pub fn remove(&mut self, v: Var) -> Option<Scalar> {
        self.0.remove(&v)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &Scalar)> {
        self.0.iter().map(|(v, s)| (*v, s))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.keys().copied()
    }

    /// Later entries win.
    pub fn merged(&self, other: &Assignment) -> Assignment {
        let mut out = self.clone();
        for (v, s) in other.iter() {
            out.insert(v, s.clone());
        }
        out
    }

    /// Substitutes the assignment into its own values until no value mentions
    /// an assigned variable, so `{q: 2, t: q}` becomes `{q: 2, t: 2}`.
    pub fn resolved(&self) -> Result<Assignment, ScalarError> {
        let mut cur = self.clone();
        for _ in 0..=self.len() {
            let pending = cur.0.values().any(|s| s.vars().iter().any(|v| cur.contains(*v)));
            if !pending {
                return Ok(cur);
            }
            let mut next = Assignment::new();
            for (v, s) in cur.iter() {
                next.insert(v, s.substitute(&cur)?);
            }
            cur = next;
        }
        Err(ScalarError::CyclicAssignment)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (v, s)) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}={s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromIterator<(Var, Scalar)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Var, Scalar)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}
