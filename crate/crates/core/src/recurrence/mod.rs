//! P-recursive recurrences `Σ_i p_i(n) · a(n-i) = 0`: exact residuals,
//! range sweeps, forward unfolding and guessing from terms.

mod guess;

pub use guess::{guess, min_terms_for_guess, GUESS_GUARD_ROWS};

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::exact::{Polynomial, Rational};
use crate::series::{Provenance, SequenceTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error("a recurrence needs at least two coefficients (order >= 1)")]
    OrderTooSmall,
    #[error("leading coefficient p0 is identically zero")]
    ZeroLeading,
    #[error("coefficient p{index} = {poly} does not have integer coefficients")]
    NonIntegral { index: usize, poly: Polynomial },
    #[error("n = {n} is below the recurrence threshold {valid_from}")]
    BelowThreshold { n: i64, valid_from: i64 },
    #[error("sequence values missing at indices {missing:?}")]
    MissingTerms { missing: Vec<i64> },
    #[error("guessing order {order}, degree {degree} needs at least {needed} terms, got {got}")]
    InsufficientTerms {
        order: usize,
        degree: usize,
        needed: usize,
        got: usize,
    },
    #[error("all terms are zero; every ansatz fits trivially")]
    TrivialInput,
    #[error("need {needed} seed terms, got {got}")]
    NotEnoughSeeds { needed: usize, got: usize },
    #[error("p0 vanishes at n = {n}; cannot solve for a(n)")]
    LeadingRoot { n: i64 },
    #[error("a({n}) = {value} is not an integer")]
    NonIntegerTerm { n: i64, value: Rational },
}

/// `Σ_{i=0}^{r} p_i(n) · a(n-i) = 0` for `n >= valid_from`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PRecurrence {
    coeffs: Vec<Polynomial>,
    int_coeffs: Vec<Vec<BigInt>>,
    valid_from: i64,
}

impl PRecurrence {
    /// Coefficients must be polynomials with integer coefficients.
    pub fn new(coeffs: Vec<Polynomial>, valid_from: i64) -> Result<Self, RecurrenceError> {
        if coeffs.len() < 2 {
            return Err(RecurrenceError::OrderTooSmall);
        }
        if coeffs[0].is_zero() {
            return Err(RecurrenceError::ZeroLeading);
        }
        let int_coeffs = coeffs
            .iter()
            .enumerate()
            .map(|(index, p)| {
                p.to_integer_coeffs()
                    .ok_or_else(|| RecurrenceError::NonIntegral {
                        index,
                        poly: p.clone(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PRecurrence {
            coeffs,
            int_coeffs,
            valid_from,
        })
    }

    /// Like [`PRecurrence::new`] but accepts rational coefficients and
    /// returns the canonical representative.
    pub fn canonical_from(
        coeffs: Vec<Polynomial>,
        valid_from: i64,
    ) -> Result<Self, RecurrenceError> {
        if coeffs.len() < 2 {
            return Err(RecurrenceError::OrderTooSmall);
        }
        if coeffs[0].is_zero() {
            return Err(RecurrenceError::ZeroLeading);
        }
        let content = coeffs
            .iter()
            .skip(1)
            .try_fold(coeffs[0].clone(), |g, p| Polynomial::gcd(&g, p))
            .expect("p0 is nonzero");
        let mut reduced: Vec<Polynomial> = coeffs
            .iter()
            .map(|p| {
                p.exact_div(&content)
                    .expect("gcd divides every coefficient")
            })
            .collect();
        let scalar = scalar_content(&reduced);
        let mut inv = scalar
            .recip()
            .expect("content of a nonzero list is nonzero");
        if reduced[0]
            .leading_coeff()
            .expect("p0 is nonzero")
            .is_negative()
        {
            inv = -inv;
        }
        for p in &mut reduced {
            *p = p.scale(&inv);
        }
        Self::new(reduced, valid_from)
    }

    pub fn canonical(&self) -> Self {
        Self::canonical_from(self.coeffs.clone(), self.valid_from)
            .expect("already a valid recurrence")
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn valid_from(&self) -> i64 {
        self.valid_from
    }

    pub fn with_valid_from(mut self, valid_from: i64) -> Self {
        self.valid_from = valid_from;
        self
    }

    /// `p_i(n)` as an integer.
    pub fn coeff_at(&self, i: usize, n: i64) -> BigInt {
        Polynomial::eval_integer_coeffs(&self.int_coeffs[i], &BigInt::from(n))
    }

    /// Same coefficients, ignoring `valid_from`.
    pub fn same_relation(&self, other: &PRecurrence) -> bool {
        self.coeffs == other.coeffs
    }

    /// Left-hand side at `n`, without checking `valid_from`.
    pub fn raw_residual(&self, seq: &SequenceTable, n: i64) -> Result<BigInt, RecurrenceError> {
        let lo = n - self.order() as i64;
        let missing = seq.missing(lo, n);
        if !missing.is_empty() {
            return Err(RecurrenceError::MissingTerms { missing });
        }
        let mut acc = BigInt::zero();
        for i in 0..=self.order() {
            let c = self.coeff_at(i, n);
            if !c.is_zero() {
                acc += c * seq.get(n - i as i64).expect("coverage checked");
            }
        }
        Ok(acc)
    }

    /// Exact left-hand side `Σ p_i(n) a(n-i)`.
    pub fn residual(&self, seq: &SequenceTable, n: i64) -> Result<BigInt, RecurrenceError> {
        if n < self.valid_from {
            return Err(RecurrenceError::BelowThreshold {
                n,
                valid_from: self.valid_from,
            });
        }
        self.raw_residual(seq, n)
    }
}

/// Spec syntax: `p0 = 1; p1 = 2*n - 7; p2 = (n-4)^2; from = 5`.
impl fmt::Display for PRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.coeffs.iter().enumerate() {
            write!(f, "p{i} = {p}; ")?;
        }
        write!(f, "from = {}", self.valid_from)
    }
}

impl fmt::Debug for PRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PRecurrence({self})")
    }
}

fn scalar_content(polys: &[Polynomial]) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::from(1);
    for c in polys.iter().flat_map(Polynomial::coeffs) {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    Rational::new(num, den).expect("lcm is positive")
}

/// Outcome of checking a recurrence over an index range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualReport {
    pub checked_range: (i64, i64),
    /// Nonzero residuals, sorted by `n`.
    pub failures: Vec<(i64, BigInt)>,
    pub elapsed: Duration,
}

impl ResidualReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Number of indices checked.
    pub fn checked(&self) -> usize {
        let (lo, hi) = self.checked_range;
        if hi < lo {
            0
        } else {
            (hi - lo + 1) as usize
        }
    }
}

/// Residual at every `n` in `n_lo..=n_hi`. Runs in parallel; the report is
/// the same regardless of scheduling.
pub fn sweep(
    rec: &PRecurrence,
    seq: &SequenceTable,
    n_lo: i64,
    n_hi: i64,
) -> Result<ResidualReport, RecurrenceError> {
    let start = Instant::now();
    if n_lo > n_hi {
        return Ok(ResidualReport {
            checked_range: (n_lo, n_hi),
            failures: Vec::new(),
            elapsed: start.elapsed(),
        });
    }
    if n_lo < rec.valid_from() {
        return Err(RecurrenceError::BelowThreshold {
            n: n_lo,
            valid_from: rec.valid_from(),
        });
    }
    let missing = seq.missing(n_lo - rec.order() as i64, n_hi);
    if !missing.is_empty() {
        return Err(RecurrenceError::MissingTerms { missing });
    }
    let mut failures: Vec<(i64, BigInt)> = (n_lo..=n_hi)
        .into_par_iter()
        .filter_map(|n| {
            let r = rec.raw_residual(seq, n).expect("coverage checked");
            (!r.is_zero()).then_some((n, r))
        })
        .collect();
    failures.sort_by_key(|(n, _)| *n);
    Ok(ResidualReport {
        checked_range: (n_lo, n_hi),
        failures,
        elapsed: start.elapsed(),
    })
}

/// Extends `initial` forward to index `upto` by solving for `a(n)`.
pub fn unfold(
    rec: &PRecurrence,
    initial: &SequenceTable,
    upto: i64,
) -> Result<SequenceTable, RecurrenceError> {
    let r = rec.order();
    if initial.len() < r {
        return Err(RecurrenceError::NotEnoughSeeds {
            needed: r,
            got: initial.len(),
        });
    }
    let mut out = initial.clone().with_provenance(Provenance::Recurrence);
    let first = initial.last_index() + 1;
    if upto >= first && first < rec.valid_from() {
        return Err(RecurrenceError::BelowThreshold {
            n: first,
            valid_from: rec.valid_from(),
        });
    }
    for n in first..=upto {
        let mut partial = BigInt::zero();
        for i in 1..=r {
            let c = rec.coeff_at(i, n);
            if !c.is_zero() {
                partial += c * out.get(n - i as i64).expect("previous terms present");
            }
        }
        let lead = rec.coeff_at(0, n);
        if lead.is_zero() {
            return Err(RecurrenceError::LeadingRoot { n });
        }
        let (q, rem) = (-partial.clone()).div_rem(&lead);
        if !rem.is_zero() {
            return Err(RecurrenceError::NonIntegerTerm {
                n,
                value: Rational::new(-partial, lead).expect("lead is nonzero"),
            });
        }
        out.push(q);
    }
    Ok(out)
}
