//! Harmonic-number closed forms for the two reference sequences.
//!
//! A045406: `a(n) = (-1)^n (2 H_{n-3} - 3) (n-3)!` for `n >= 3`.
//! A001711: `a(n) = (n+3)! (2 H_{n+3} - 3) / 4` for `n >= 0`.
//!
//! The single-value evaluators go through exact rationals. The table
//! builders use the integer sequence `S_m = m! H_m`, with
//! `S_{m+1} = (m+1) S_m + m!`, so long ranges cost one bigint product per
//! step instead of a fresh harmonic sum.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::special::{factorial, harmonic};
use super::{Provenance, SequenceTable, SeriesError};
use crate::exact::Rational;

pub const A045406_MIN_INDEX: i64 = 3;
pub const A001711_MIN_INDEX: i64 = 0;

fn two_h_minus_three(m: i64) -> Result<Rational, SeriesError> {
    Ok(harmonic(m)? * Rational::from(2) - Rational::from(3))
}

pub fn closed_form_a045406(n: i64) -> Result<BigInt, SeriesError> {
    if n < A045406_MIN_INDEX {
        return Err(SeriesError::ClosedFormDomain {
            sequence: "A045406",
            n,
            min: A045406_MIN_INDEX,
        });
    }
    let sign = if n % 2 == 0 { 1 } else { -1 };
    let value =
        two_h_minus_three(n - 3)? * Rational::from(factorial(n - 3)?) * Rational::from(sign);
    value.to_integer().ok_or(SeriesError::NonIntegerClosedForm {
        sequence: "A045406",
        n,
        value,
    })
}

pub fn closed_form_a001711(n: i64) -> Result<BigInt, SeriesError> {
    if n < A001711_MIN_INDEX {
        return Err(SeriesError::ClosedFormDomain {
            sequence: "A001711",
            n,
            min: A001711_MIN_INDEX,
        });
    }
    let value = two_h_minus_three(n + 3)?
        * Rational::from(factorial(n + 3)?)
        * Rational::new(1, 4).expect("nonzero");
    value.to_integer().ok_or(SeriesError::NonIntegerClosedForm {
        sequence: "A001711",
        n,
        value,
    })
}

/// Pairs `(m!, m! H_m)` for `m = 0..=m_max`.
fn factorial_harmonic_pairs(m_max: usize) -> impl Iterator<Item = (BigInt, BigInt)> {
    let mut state = Some((BigInt::one(), BigInt::zero()));
    let mut m = 0usize;
    std::iter::from_fn(move || {
        if m > m_max {
            return None;
        }
        let (fact, s) = state.take()?;
        let out = (fact.clone(), s.clone());
        let k = BigInt::from(m + 1);
        state = Some((&fact * &k, s * &k + fact));
        m += 1;
        Some(out)
    })
}

/// `closed_form_a045406(n)` for every `n` in `lo..=hi`.
pub fn closed_form_a045406_table(lo: i64, hi: i64) -> Result<SequenceTable, SeriesError> {
    if lo < A045406_MIN_INDEX {
        return Err(SeriesError::ClosedFormDomain {
            sequence: "A045406",
            n: lo,
            min: A045406_MIN_INDEX,
        });
    }
    let mut values = Vec::new();
    if hi >= lo {
        let two = BigInt::from(2);
        let three = BigInt::from(3);
        for (m, (fact, s)) in factorial_harmonic_pairs((hi - 3) as usize).enumerate() {
            let n = m as i64 + 3;
            if n < lo {
                continue;
            }
            let v = &two * s - &three * fact;
            values.push(if n % 2 == 0 { v } else { -v });
        }
    }
    Ok(SequenceTable::new(lo, values, Provenance::ClosedForm))
}

/// `closed_form_a001711(n)` for every `n` in `lo..=hi`.
pub fn closed_form_a001711_table(lo: i64, hi: i64) -> Result<SequenceTable, SeriesError> {
    if lo < A001711_MIN_INDEX {
        return Err(SeriesError::ClosedFormDomain {
            sequence: "A001711",
            n: lo,
            min: A001711_MIN_INDEX,
        });
    }
    let mut values = Vec::new();
    if hi >= lo {
        let two = BigInt::from(2);
        let three = BigInt::from(3);
        let four = BigInt::from(4);
        for (m, (fact, s)) in factorial_harmonic_pairs((hi + 3) as usize).enumerate() {
            let n = m as i64 - 3;
            if n < lo {
                continue;
            }
            let v = &two * s - &three * fact;
            let (q, r) = v.div_rem(&four);
            if !r.is_zero() {
                return Err(SeriesError::NonIntegerClosedForm {
                    sequence: "A001711",
                    n,
                    value: Rational::new(v, 4).expect("nonzero"),
                });
            }
            values.push(q);
        }
    }
    Ok(SequenceTable::new(lo, values, Provenance::ClosedForm))
}
