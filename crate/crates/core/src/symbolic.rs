//! Harmonic-affine expressions: finite sums `Σ c_s(n) · H[n+s] + r(n)` with
//! rational-function coefficients.
//!
//! Shift normalization rewrites every `H[n+s]` in terms of a single anchor
//! `H[n+a]`, one step of `H[m+1] = H[m] + 1/(m+1)` at a time, folding the
//! `1/(n+k)` corrections into the remainder. Once a single harmonic term is
//! left, the expression is the pair `(alpha, beta)` meaning
//! `alpha(n) · H[n+a] + beta(n)`, and an identity holds iff both are the zero
//! rational function.
//!
//! # Text rendering
//!
//! Terms are printed in ascending shift order followed by the remainder:
//!
//! ```text
//! (2) * H[n-4] + (-3)
//! ((1)/(n - 2)) * H[n-3] + (1)
//! ```
//!
//! Each coefficient is wrapped in parentheses and rendered with the
//! polynomial syntax used for recurrence specs (`(num)/(den)` when it is not
//! a polynomial). The remainder is always printed, even when zero. The
//! rendering reparses to the same expression.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::exact::{ExactError, Rational, RationalFunction};
use crate::series::harmonic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("term {term} has a pole at n = {n}")]
    Pole { term: String, n: i64 },
    #[error("term {term} needs H at negative index {index} when n = {n}")]
    NegativeHarmonicIndex { term: String, n: i64, index: i64 },
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HarmonicAffineExpr {
    terms: BTreeMap<i64, RationalFunction>,
    remainder: RationalFunction,
}

/// `H[n+s]` with the sign spelled out: `H[n]`, `H[n+2]`, `H[n-4]`.
pub fn harmonic_atom(shift: i64) -> String {
    match shift {
        0 => "H[n]".to_string(),
        s if s > 0 => format!("H[n+{s}]"),
        s => format!("H[n-{}]", -s),
    }
}

impl HarmonicAffineExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: RationalFunction) -> Self {
        HarmonicAffineExpr {
            terms: BTreeMap::new(),
            remainder: c,
        }
    }

    /// `coeff · H[n+shift]`.
    pub fn term(coeff: RationalFunction, shift: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(shift, coeff);
        }
        HarmonicAffineExpr {
            terms,
            remainder: RationalFunction::zero(),
        }
    }

    /// `H[n+shift]`.
    pub fn harmonic(shift: i64) -> Self {
        Self::term(RationalFunction::one(), shift)
    }

    /// `h[n+shift] = 2 H[n+shift] - 3`.
    pub fn h(shift: i64) -> Self {
        Self::term(RationalFunction::from_int(2), shift)
            .add(&Self::constant(RationalFunction::from_int(-3)))
    }

    pub fn terms(&self) -> &BTreeMap<i64, RationalFunction> {
        &self.terms
    }

    pub fn remainder(&self) -> &RationalFunction {
        &self.remainder
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.remainder.is_zero()
    }

    /// Whether there are no harmonic terms.
    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_shift(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (shift, c) in &rhs.terms {
            let sum = match terms.get(shift) {
                Some(existing) => existing + c,
                None => c.clone(),
            };
            if sum.is_zero() {
                terms.remove(shift);
            } else {
                terms.insert(*shift, sum);
            }
        }
        HarmonicAffineExpr {
            terms,
            remainder: &self.remainder + &rhs.remainder,
        }
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        HarmonicAffineExpr {
            terms: self.terms.iter().map(|(s, k)| (*s, k * c)).collect(),
            remainder: &self.remainder * c,
        }
    }

    pub fn checked_div(&self, c: &RationalFunction) -> Result<Self, ExactError> {
        Ok(self.scale(&c.recip()?))
    }

    /// Rewrites every harmonic term onto `H[n+anchor]`.
    pub fn normalize(&self, anchor: i64) -> Self {
        let mut out = HarmonicAffineExpr::constant(self.remainder.clone());
        for (&shift, coeff) in &self.terms {
            // H[n+s] = H[n+a] + Σ_{k=a+1}^{s} 1/(n+k)        (s > a)
            // H[n+s] = H[n+a] - Σ_{k=s+1}^{a} 1/(n+k)        (s < a)
            let mut correction = RationalFunction::zero();
            if shift > anchor {
                for k in anchor + 1..=shift {
                    correction = &correction + &RationalFunction::reciprocal_linear(k);
                }
            } else {
                for k in shift + 1..=anchor {
                    correction = &correction - &RationalFunction::reciprocal_linear(k);
                }
            }
            out = out
                .add(&Self::term(coeff.clone(), anchor))
                .add(&Self::constant(coeff * &correction));
        }
        out
    }

    /// Normalizes onto the smallest shift present.
    pub fn normalize_default(&self) -> Self {
        match self.min_shift() {
            Some(a) => self.normalize(a),
            None => self.clone(),
        }
    }

    /// `(alpha, beta)` with `self == alpha · H[n+anchor] + beta`.
    pub fn reduce_to_alpha_beta(&self, anchor: i64) -> (RationalFunction, RationalFunction) {
        let normal = self.normalize(anchor);
        let alpha = normal.terms.get(&anchor).cloned().unwrap_or_default();
        (alpha, normal.remainder)
    }

    /// Exact value at an integer `n`.
    pub fn eval(&self, n: i64) -> Result<Rational, SymbolicError> {
        let pole = |term: String| SymbolicError::Pole { term, n };
        let mut acc = self
            .remainder
            .eval_int(n)
            .map_err(|_| pole(format!("({})", self.remainder)))?;
        for (&shift, coeff) in &self.terms {
            let term = || format!("({}) * {}", coeff, harmonic_atom(shift));
            let c = coeff.eval_int(n).map_err(|_| pole(term()))?;
            let index = n + shift;
            let h = harmonic(index).map_err(|_| SymbolicError::NegativeHarmonicIndex {
                term: term(),
                n,
                index,
            })?;
            acc += &(c * h);
        }
        Ok(acc)
    }
}

impl fmt::Display for HarmonicAffineExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (shift, coeff) in &self.terms {
            write!(f, "({coeff}) * {} + ", harmonic_atom(*shift))?;
        }
        write!(f, "({})", self.remainder)
    }
}

impl Add for &HarmonicAffineExpr {
    type Output = HarmonicAffineExpr;
    fn add(self, rhs: &HarmonicAffineExpr) -> HarmonicAffineExpr {
        HarmonicAffineExpr::add(self, rhs)
    }
}

impl Neg for &HarmonicAffineExpr {
    type Output = HarmonicAffineExpr;
    fn neg(self) -> HarmonicAffineExpr {
        self.scale(&RationalFunction::from_int(-1))
    }
}

impl Sub for &HarmonicAffineExpr {
    type Output = HarmonicAffineExpr;
    fn sub(self, rhs: &HarmonicAffineExpr) -> HarmonicAffineExpr {
        HarmonicAffineExpr::add(self, &-rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Polynomial;

    fn lin(shift: i64) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::shifted_var(shift))
    }

    fn poly(c: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(Polynomial::from_ints(c))
    }

    /// H[n-1]/n - 2 H[n-2]/(n-1) + H[n-3]/(n-2)
    fn egf_bracket() -> HarmonicAffineExpr {
        let t1 = HarmonicAffineExpr::term(RationalFunction::reciprocal_linear(0), -1);
        let t2 = HarmonicAffineExpr::term(
            RationalFunction::reciprocal_linear(-1) * RationalFunction::from_int(-2),
            -2,
        );
        let t3 = HarmonicAffineExpr::term(RationalFunction::reciprocal_linear(-2), -3);
        t1.add(&t2).add(&t3)
    }

    /// (n-3) h[n-3] - (2n-7) h[n-4] + (n-4) h[n-5]
    fn mathar() -> HarmonicAffineExpr {
        HarmonicAffineExpr::h(-3)
            .scale(&lin(-3))
            .add(&HarmonicAffineExpr::h(-4).scale(&-poly(&[-7, 2])))
            .add(&HarmonicAffineExpr::h(-5).scale(&lin(-4)))
    }

    #[test]
    fn additive_inverse_and_zero_scale() {
        let e = mathar();
        assert!((&e - &e).is_zero());
        assert!(e.scale(&RationalFunction::zero()).is_zero());
    }

    #[test]
    fn h_is_two_h_minus_three() {
        let e = HarmonicAffineExpr::harmonic(0)
            .scale(&RationalFunction::from_int(2))
            .add(&HarmonicAffineExpr::constant(RationalFunction::from_int(
                -3,
            )));
        assert_eq!(e, HarmonicAffineExpr::h(0));
        assert_eq!(e.to_string(), "(2) * H[n] + (-3)");
    }

    #[test]
    fn egf_bracket_normalizes_to_anchor_minus_three() {
        let den = Polynomial::from_ints(&[0, 2, -3, 1]); // n(n-1)(n-2)
        let normal = egf_bracket().normalize(-3);
        let expected = HarmonicAffineExpr::term(
            RationalFunction::new(Polynomial::from_ints(&[2]), den.clone()).unwrap(),
            -3,
        )
        .add(&HarmonicAffineExpr::constant(
            RationalFunction::new(Polynomial::from_ints(&[-3]), den).unwrap(),
        ));
        assert_eq!(normal, expected);
    }

    #[test]
    fn cleared_bracket_reduces_to_two_minus_three() {
        let cleared = egf_bracket().scale(&poly(&[0, 2, -3, 1]));
        let (alpha, beta) = cleared.reduce_to_alpha_beta(-3);
        assert_eq!(alpha, RationalFunction::from_int(2));
        assert_eq!(beta, RationalFunction::from_int(-3));
    }

    #[test]
    fn single_h_term_shifts_down_by_one() {
        let e = HarmonicAffineExpr::h(-3).scale(&lin(-3));
        let expected = HarmonicAffineExpr::h(-4)
            .scale(&lin(-3))
            .add(&HarmonicAffineExpr::constant(RationalFunction::from_int(2)));
        assert_eq!(e.normalize(-4), expected);
    }

    #[test]
    fn mathar_expression_vanishes() {
        for anchor in -6..=-2 {
            let (alpha, beta) = mathar().reduce_to_alpha_beta(anchor);
            assert!(alpha.is_zero() && beta.is_zero(), "anchor {anchor}");
        }
        assert_eq!(mathar().normalize(-4).to_string(), "(0)");
    }

    #[test]
    fn normalize_is_idempotent() {
        let once = egf_bracket().normalize(-2);
        assert_eq!(once.normalize(-2), once);
        assert_eq!(mathar().normalize_default(), mathar().normalize(-5));
    }

    #[test]
    fn zero_expression() {
        let (a, b) = HarmonicAffineExpr::zero().reduce_to_alpha_beta(7);
        assert!(a.is_zero() && b.is_zero());
        assert_eq!(
            HarmonicAffineExpr::zero().eval(12).unwrap(),
            Rational::zero()
        );
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(
            egf_bracket().eval(6).unwrap(),
            Rational::new(1, 180).unwrap()
        );
        assert_eq!(mathar().eval(8).unwrap(), Rational::zero());
    }

    #[test]
    fn evaluation_errors_name_the_term() {
        let err = egf_bracket().eval(2).unwrap_err();
        assert!(matches!(err, SymbolicError::Pole { n: 2, .. }));
        let err = HarmonicAffineExpr::term(RationalFunction::reciprocal_linear(-5), 0)
            .eval(5)
            .unwrap_err();
        assert_eq!(
            err,
            SymbolicError::Pole {
                term: "((1)/(n - 5)) * H[n]".to_string(),
                n: 5
            }
        );
        let err = HarmonicAffineExpr::harmonic(-9).eval(3).unwrap_err();
        assert!(matches!(
            err,
            SymbolicError::NegativeHarmonicIndex { index: -6, .. }
        ));
    }
}
