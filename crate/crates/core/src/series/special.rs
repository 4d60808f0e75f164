//! Harmonic numbers, factorials and unsigned Stirling numbers of the first
//! kind.

use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::SeriesError;
use crate::exact::Rational;

/// Prefix table `H_0, H_1, ..., H_m`, extended on demand.
#[derive(Clone, Debug)]
pub struct HarmonicTable {
    values: Vec<Rational>,
}

impl Default for HarmonicTable {
    fn default() -> Self {
        HarmonicTable {
            values: vec![Rational::zero()],
        }
    }
}

impl HarmonicTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn extend_to(&mut self, m: usize) {
        while self.values.len() <= m {
            let k = self.values.len() as u64;
            let next = self
                .values
                .last()
                .expect("H_0 present")
                .add_unit_fraction(k);
            self.values.push(next);
        }
    }

    pub fn get(&mut self, m: usize) -> &Rational {
        self.extend_to(m);
        &self.values[m]
    }

    /// Read-only lookup; `None` if the table is not long enough.
    pub fn peek(&self, m: usize) -> Option<&Rational> {
        self.values.get(m)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

static HARMONIC: LazyLock<RwLock<HarmonicTable>> = LazyLock::new(Default::default);

/// `H_m = 1 + 1/2 + ... + 1/m`, with `H_0 = 0`. Backed by a process-wide
/// memo table.
pub fn harmonic(m: i64) -> Result<Rational, SeriesError> {
    let idx = usize::try_from(m).map_err(|_| SeriesError::NegativeIndex {
        what: "harmonic number",
        index: m,
    })?;
    if let Some(h) = HARMONIC.read().expect("harmonic memo poisoned").peek(idx) {
        return Ok(h.clone());
    }
    let mut table = HARMONIC.write().expect("harmonic memo poisoned");
    Ok(table.get(idx).clone())
}

pub fn factorial(m: i64) -> Result<BigInt, SeriesError> {
    if m < 0 {
        return Err(SeriesError::NegativeIndex {
            what: "factorial",
            index: m,
        });
    }
    Ok((1..=m).fold(BigInt::one(), |acc, k| acc * k))
}

/// Row `n` of the unsigned Stirling cycle triangle: `c(n, 0..=n)`.
pub fn stirling_cycle_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 1..=n {
        let mult = BigInt::from(k - 1);
        let mut next = vec![BigInt::zero(); k + 1];
        for (m, slot) in next.iter_mut().enumerate() {
            if m >= 1 {
                *slot += &row[m - 1];
            }
            if m < row.len() {
                *slot += &row[m] * &mult;
            }
        }
        row = next;
    }
    row
}

/// `c(n, m)` via `c(n, m) = c(n-1, m-1) + (n-1) c(n-1, m)`. Indices outside
/// the triangle give 0.
pub fn stirling_cycle(n: i64, m: i64) -> BigInt {
    if n < 0 || m < 0 || m > n {
        return BigInt::zero();
    }
    stirling_cycle_row(n as usize).swap_remove(m as usize)
}

/// `c(n, m)` for every `n` in `0..=n_max`, computing the triangle once.
pub fn stirling_cycle_column(n_max: usize, m: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut row = vec![BigInt::one()];
    out.push(row.get(m).cloned().unwrap_or_default());
    for k in 1..=n_max {
        let mult = BigInt::from(k - 1);
        let width = (m + 1).min(k + 1);
        let mut next = vec![BigInt::zero(); width];
        for (j, slot) in next.iter_mut().enumerate() {
            if j >= 1 {
                if let Some(prev) = row.get(j - 1) {
                    *slot += prev;
                }
            }
            if let Some(prev) = row.get(j) {
                *slot += prev * &mult;
            }
        }
        row = next;
        out.push(row.get(m).cloned().unwrap_or_default());
    }
    out
}
