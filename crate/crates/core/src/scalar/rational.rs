use std::fmt;


use super::gaussian::GaussianRational;
use super::polynomial::Polynomial;
use super::ScalarError;

/// Quotient of two Laurent polynomials.
///
/// No gcd normalization is attempted. The constructor divides out the
/// monomial content of the denominator (a unit in the Laurent ring), makes
/// the denominator monic, and cancels the case where the numerator is a
/// monomial multiple of the denominator. Equality is by cross-multiplication.
#[derive(Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::constant(num_traits::One::one()) }
    }

    fn normalized(mut num: Polynomial, mut den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::from_polynomial(Polynomial::zero());
        }
        let shift = den.monomial_content().inv();
        if !shift.is_one() {
            den = den.mul_monomial(&shift);
            num = num.mul_monomial(&shift);
        }
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        if !num_traits::One::is_one(&lc) {
            let inv = lc.inv().expect("leading coefficient is nonzero");
            den = den.scale(&inv);
            num = num.scale(&inv);
        }
        // Numerator an exact monomial multiple of the denominator.
        if let (Some((mn, cn)), Some((md, _))) = (num.leading(), den.leading()) {
            let ratio = mn.mul(&md.inv());
            let candidate = den.mul_monomial(&ratio).scale(cn);
            if candidate == num {
                return Self::from_polynomial(Polynomial::term(cn.clone(), ratio));
            }
        }
        RationalFunction { num, den }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    /// `Some` when the denominator has been reduced to one.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.den.as_constant().filter(num_traits::One::is_one).map(|_| &self.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::normalized(self.num.add(&o.num), self.den.clone());
        }
        Self::normalized(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::from_polynomial(Polynomial::zero());
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_polynomial() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "({})/({})", self.num, self.den),
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
