use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ExactError, Polynomial, Rational};

/// Quotient of polynomials in `n`, kept reduced with a monic denominator so
/// that structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    numer: Polynomial,
    denom: Polynomial,
}

impl RationalFunction {
    pub fn new(numer: Polynomial, denom: Polynomial) -> Result<Self, ExactError> {
        if denom.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if numer.is_zero() {
            return Ok(Self::zero());
        }
        let g = Polynomial::gcd(&numer, &denom)?;
        let numer = numer.exact_div(&g)?;
        let denom = denom.exact_div(&g)?;
        let lc = denom
            .leading_coeff()
            .expect("nonzero denominator")
            .recip()?;
        Ok(RationalFunction {
            numer: numer.scale(&lc),
            denom: denom.scale(&lc),
        })
    }

    pub fn zero() -> Self {
        RationalFunction {
            numer: Polynomial::zero(),
            denom: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from(c))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            numer: p,
            denom: Polynomial::one(),
        }
    }

    /// `1 / (n + shift)`.
    pub fn reciprocal_linear(shift: i64) -> Self {
        RationalFunction {
            numer: Polynomial::one(),
            denom: Polynomial::shifted_var(shift),
        }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.numer
    }

    pub fn denom(&self) -> &Polynomial {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denom.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.numer)
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        Self::new(self.denom.clone(), self.numer.clone())
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<Self, ExactError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn eval(&self, at: &Rational) -> Result<Rational, ExactError> {
        let d = self.denom.eval(at);
        if d.is_zero() {
            return Err(ExactError::Pole(at.clone()));
        }
        self.numer.eval(at).checked_div(&d)
    }

    pub fn eval_int(&self, at: i64) -> Result<Rational, ExactError> {
        self.eval(&Rational::from(at))
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

/// `num` for polynomials, `(num)/(den)` otherwise.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "({})/({})", self.numer, self.denom)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.denom == rhs.denom {
            return RationalFunction::new(&self.numer + &rhs.numer, self.denom.clone())
                .expect("denominator is nonzero");
        }
        let numer = &(&self.numer * &rhs.denom) + &(&rhs.numer * &self.denom);
        RationalFunction::new(numer, &self.denom * &rhs.denom).expect("denominator is nonzero")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.numer * &rhs.numer, &self.denom * &rhs.denom)
            .expect("denominator is nonzero")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            numer: -&self.numer,
            denom: self.denom.clone(),
        }
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}
