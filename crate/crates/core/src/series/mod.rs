//! Truncated power series over the rationals, the special sequences built
//! on them, and dense integer sequence tables.

mod closed_form;
mod power_series;
mod special;

pub use closed_form::{
    closed_form_a001711, closed_form_a001711_table, closed_form_a045406, closed_form_a045406_table,
    A001711_MIN_INDEX, A045406_MIN_INDEX,
};
pub use power_series::{build_f, egf_coefficients, TruncatedSeries};
pub use special::{
    factorial, harmonic, stirling_cycle, stirling_cycle_column, stirling_cycle_row, HarmonicTable,
};

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series order must be at least {min}, got {got}")]
    OrderTooSmall { min: usize, got: usize },
    #[error("n! * [x^{n}] is not an integer: {value}")]
    NonIntegerCoefficient { n: i64, value: Rational },
    #[error("{what} undefined at negative index {index}")]
    NegativeIndex { what: &'static str, index: i64 },
    #[error("{sequence} closed form is defined for n >= {min}, got n = {n}")]
    ClosedFormDomain {
        sequence: &'static str,
        n: i64,
        min: i64,
    },
    #[error("{sequence} closed form is not an integer at n = {n}: {value}")]
    NonIntegerClosedForm {
        sequence: &'static str,
        n: i64,
        value: Rational,
    },
    #[error("index {n} outside table range {range}")]
    OutOfRange { n: i64, range: String },
}

/// Where a [`SequenceTable`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    ClosedForm,
    Egf,
    BFile,
    Recurrence,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::Egf => "egf",
            Provenance::BFile => "b-file",
            Provenance::Recurrence => "recurrence",
        })
    }
}

/// Contiguous values `a(offset), a(offset + 1), ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    offset: i64,
    values: Vec<BigInt>,
    provenance: Provenance,
}

impl SequenceTable {
    pub fn new(offset: i64, values: Vec<BigInt>, provenance: Provenance) -> Self {
        SequenceTable {
            offset,
            values,
            provenance,
        }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Last covered index; `offset - 1` when empty.
    pub fn last_index(&self) -> i64 {
        self.offset + self.values.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= self.offset && n <= self.last_index()
    }

    pub fn get(&self, n: i64) -> Result<&BigInt, SeriesError> {
        if !self.contains(n) {
            return Err(SeriesError::OutOfRange {
                n,
                range: self.range_string(),
            });
        }
        Ok(&self.values[(n - self.offset) as usize])
    }

    /// Indices in `lo..=hi` that the table does not cover.
    pub fn missing(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&n| !self.contains(n)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (self.offset + i as i64, v))
    }

    /// Sub-table over `lo..=hi`, clipped to the covered range.
    pub fn slice(&self, lo: i64, hi: i64) -> SequenceTable {
        let lo = lo.max(self.offset);
        let hi = hi.min(self.last_index());
        let values = if hi < lo {
            Vec::new()
        } else {
            self.values[(lo - self.offset) as usize..=(hi - self.offset) as usize].to_vec()
        };
        SequenceTable::new(lo, values, self.provenance)
    }

    /// The first `count` terms.
    pub fn take_first(&self, count: usize) -> SequenceTable {
        self.slice(self.offset, self.offset + count as i64 - 1)
    }

    pub fn push(&mut self, value: BigInt) {
        self.values.push(value);
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    fn range_string(&self) -> String {
        if self.is_empty() {
            "(empty)".to_string()
        } else {
            format!("[{}, {}]", self.offset, self.last_index())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> SequenceTable {
        SequenceTable::new(2, [1, 3, -1].map(BigInt::from).to_vec(), Provenance::BFile)
    }

    #[test]
    fn range_queries() {
        let t = table();
        assert_eq!(t.get(3).unwrap(), &BigInt::from(3));
        assert_eq!(t.last_index(), 4);
        assert!(matches!(
            t.get(1),
            Err(SeriesError::OutOfRange { n: 1, .. })
        ));
        assert!(matches!(
            t.get(5),
            Err(SeriesError::OutOfRange { n: 5, .. })
        ));
        assert_eq!(t.missing(0, 5), vec![0, 1, 5]);
    }

    #[test]
    fn slicing() {
        let t = table();
        let s = t.slice(3, 10);
        assert_eq!(s.offset(), 3);
        assert_eq!(s.len(), 2);
        assert!(t.slice(7, 9).is_empty());
        assert_eq!(t.take_first(1).values(), &[BigInt::from(1)]);
    }

    #[test]
    fn egf_table_matches_printed_values() {
        let t = egf_coefficients(&build_f(11).unwrap(), 2).unwrap();
        let expected = [1, 3, -1, 0, 4, -28, 188, -1368, 11016, -98208].map(BigInt::from);
        assert_eq!(t.offset(), 2);
        assert_eq!(t.values(), &expected);
        assert_eq!(t.provenance(), Provenance::Egf);
    }

    #[test]
    fn egf_twelfth_term_matches_closed_form() {
        let t = egf_coefficients(&build_f(12).unwrap(), 2).unwrap();
        // (-1)^12 (2 H_9 - 3) 9!, and also -17 a(11) - 64 a(10)
        assert_eq!(t.get(12).unwrap(), &BigInt::from(964512));
        assert_eq!(closed_form_a045406(12).unwrap(), BigInt::from(964512));
    }
}
