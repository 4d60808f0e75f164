use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::special::factorial;
use super::{Provenance, SequenceTable, SeriesError};
use crate::exact::Rational;

/// Dense power series in `x` truncated after `x^order` (inclusive).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![Rational::one()], order)
    }

    /// Series from integer coefficients; `order` fixes the truncation.
    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `[x^k]`; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(
            self.coeffs[..=order.min(self.order())].to_vec(),
            order.min(self.order()),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Term-by-term derivative. The result loses one order of precision.
    pub fn derivative(&self) -> Self {
        let order = self.order().saturating_sub(1);
        let coeffs = (1..=self.order())
            .map(|k| &self.coeffs[k] * &Rational::from(k as i64))
            .collect();
        Self::new(coeffs, order)
    }

    /// `log(1 + x) = x - x^2/2 + x^3/3 - ...`
    pub fn log1p(order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| match k {
                0 => Rational::zero(),
                _ => {
                    let sign = if k % 2 == 1 { 1 } else { -1 };
                    Rational::new(sign, k as i64).expect("k >= 1")
                }
            })
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|k| &self.coeffs[k] + &rhs.coeffs[k])
                .collect(),
        }
    }
}

/// Coefficients `0..=order` scaled by the lcm `d` of their denominators,
/// as integers, together with `d`.
fn cleared(coeffs: &[Rational], order: usize) -> (Vec<BigInt>, BigInt) {
    let d = coeffs[..=order]
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = coeffs[..=order]
        .iter()
        .map(|c| c.numer() * (&d / c.denom()))
        .collect();
    (ints, d)
}

/// Cauchy product truncated to the smaller order. Denominators are cleared
/// first so the convolution runs over integers and each output coefficient
/// is reduced once.
impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let (a, da) = cleared(&self.coeffs, order);
        let (b, db) = cleared(&rhs.coeffs, order);
        let mut out = vec![BigInt::zero(); order + 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(order + 1 - i) {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let d = da * db;
        TruncatedSeries {
            coeffs: out
                .into_iter()
                .map(|c| Rational::new(c, d.clone()).expect("denominator is positive"))
                .collect(),
        }
    }
}

/// `((1 + x) log(1 + x))^2 / 2`, the exponential generating function of
/// A045406.
pub fn build_f(order: usize) -> Result<TruncatedSeries, SeriesError> {
    if order < 2 {
        return Err(SeriesError::OrderTooSmall { min: 2, got: order });
    }
    let one_plus_x = TruncatedSeries::from_ints(&[1, 1], order);
    let g = &one_plus_x * &TruncatedSeries::log1p(order);
    Ok((&g * &g).scale(&Rational::new(1, 2).expect("nonzero")))
}

/// Reads an e.g.f. back as integers `a(n) = n! [x^n] F` for
/// `offset <= n <= order`. A fractional product is an error.
pub fn egf_coefficients(f: &TruncatedSeries, offset: usize) -> Result<SequenceTable, SeriesError> {
    let mut values = Vec::with_capacity(f.order().saturating_sub(offset) + 1);
    let mut fact = factorial(offset as i64)?;
    for n in offset..=f.order() {
        if n > offset {
            fact *= BigInt::from(n);
        }
        let value = f.coeffs[n].clone() * Rational::from(fact.clone());
        match value.to_integer() {
            Some(v) => values.push(v),
            None => return Err(SeriesError::NonIntegerCoefficient { n: n as i64, value }),
        }
    }
    Ok(SequenceTable::new(offset as i64, values, Provenance::Egf))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn log1p_prefix() {
        let s = TruncatedSeries::log1p(3);
        assert_eq!(s.coeffs(), &[q(0, 1), q(1, 1), q(-1, 2), q(1, 3)]);
        assert_eq!(TruncatedSeries::log1p(0).coeffs(), &[Rational::zero()]);
        assert_eq!(TruncatedSeries::log1p(7).coeff(5), q(1, 5));
    }

    #[test]
    fn binomial_square() {
        let a = TruncatedSeries::from_ints(&[1, 1], 2);
        assert_eq!(
            (&a * &a).coeffs(),
            TruncatedSeries::from_ints(&[1, 2, 1], 2).coeffs()
        );
        assert!((&a * &TruncatedSeries::zero(2)).is_zero());
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let a = TruncatedSeries::log1p(10);
        let b = TruncatedSeries::one(4);
        assert_eq!((&a * &b).order(), 4);
        assert_eq!((&a + &b).order(), 4);
    }

    #[test]
    fn log_square_times_binomial_at_x4() {
        let order = 6;
        let l = TruncatedSeries::log1p(order);
        let half_sq = (&l * &l).scale(&q(1, 2));
        let sq = TruncatedSeries::from_ints(&[1, 2, 1], order);
        let c4 = (&half_sq * &sq).coeff(4);
        assert_eq!(c4, q(-1, 24));
        assert_eq!(c4 * Rational::from(24), Rational::from(-1));
    }

    #[test]
    fn f_low_coefficients() {
        let f = build_f(7).unwrap();
        assert_eq!(f.coeff(0), Rational::zero());
        assert_eq!(f.coeff(1), Rational::zero());
        assert_eq!(f.coeff(2), q(1, 2));
        assert_eq!(f.coeff(7), q(-28, 5040));
        assert!(matches!(build_f(1), Err(SeriesError::OrderTooSmall { .. })));
    }

    #[test]
    fn non_integer_egf_rejected() {
        let s = TruncatedSeries::new(vec![Rational::zero(), Rational::zero(), q(1, 3)], 2);
        assert!(matches!(
            egf_coefficients(&s, 0),
            Err(SeriesError::NonIntegerCoefficient { n: 2, .. })
        ));
    }

    #[test]
    fn derivative_of_log_times_one_plus_x() {
        for order in 1..40 {
            let d = TruncatedSeries::log1p(order).derivative();
            let prod = &TruncatedSeries::from_ints(&[1, 1], d.order()) * &d;
            assert_eq!(prod, TruncatedSeries::one(d.order()), "order {order}");
        }
    }
}
