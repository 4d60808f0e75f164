//! Recurrence guessing: exact nullspace of the ansatz
//! `Σ_{i<=r, j<=d} c_ij · n^j · a(n-i) = 0`, one row per available `n`.
//!
//! Relations often fail at the first few indices, where a coefficient root
//! masks a lower-index term. When the full system has no usable solution the
//! leading row is dropped and the system is solved again, a bounded number
//! of times. The first row of the system that produced a candidate becomes
//! its `valid_from`.

use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use super::{PRecurrence, RecurrenceError};
use crate::exact::{Polynomial, Rational};
use crate::linalg::IntMatrix;
use crate::series::SequenceTable;

/// Rows beyond the number of unknowns that every solve must include.
pub const GUESS_GUARD_ROWS: usize = 5;

const MAX_LEADING_SKIP: usize = 8;

/// `(order + 1)(degree + 1) + order + guard` terms.
pub fn min_terms_for_guess(order: usize, degree: usize) -> usize {
    (order + 1) * (degree + 1) + order + GUESS_GUARD_ROWS
}

fn ansatz_row(seq: &SequenceTable, n: i64, order: usize, degree: usize) -> Vec<BigInt> {
    let n_big = BigInt::from(n);
    let powers: Vec<BigInt> = (0..=degree).map(|j| Pow::pow(&n_big, j as u32)).collect();
    let mut row = Vec::with_capacity((order + 1) * (degree + 1));
    for i in 0..=order {
        let a = seq.get(n - i as i64).expect("row index within table");
        for p in &powers {
            row.push(p * a);
        }
    }
    row
}

fn assemble(
    vector: &[BigInt],
    order: usize,
    degree: usize,
    valid_from: i64,
) -> Option<PRecurrence> {
    let coeffs: Vec<Polynomial> = vector
        .chunks(degree + 1)
        .take(order + 1)
        .map(|c| Polynomial::new(c.iter().cloned().map(Rational::from).collect()))
        .collect();
    // A vanishing p0 is a relation of lower effective order; the matching
    // candidate is found by guessing at that order instead.
    PRecurrence::canonical_from(coeffs, valid_from).ok()
}

fn holds_on_all_terms(rec: &PRecurrence, seq: &SequenceTable) -> bool {
    (rec.valid_from()..=seq.last_index()).all(|n| rec.residual(seq, n).is_ok_and(|r| r.is_zero()))
}

/// Candidate recurrences of the given order and coefficient degree, each
/// canonical and verified against every supplied term from its `valid_from`
/// on. An empty list means no relation of that shape exists.
pub fn guess(
    seq: &SequenceTable,
    order: usize,
    degree: usize,
) -> Result<Vec<PRecurrence>, RecurrenceError> {
    if order == 0 {
        return Err(RecurrenceError::OrderTooSmall);
    }
    let needed = min_terms_for_guess(order, degree);
    if seq.len() < needed {
        return Err(RecurrenceError::InsufficientTerms {
            order,
            degree,
            needed,
            got: seq.len(),
        });
    }
    if seq.values().iter().all(Zero::is_zero) {
        return Err(RecurrenceError::TrivialInput);
    }

    let unknowns = (order + 1) * (degree + 1);
    let first_row = seq.offset() + order as i64;
    let rows: Vec<Vec<BigInt>> = (first_row..=seq.last_index())
        .map(|n| ansatz_row(seq, n, order, degree))
        .collect();

    for skip in 0..=MAX_LEADING_SKIP {
        if rows.len() < skip + unknowns + GUESS_GUARD_ROWS {
            break;
        }
        let valid_from = first_row + skip as i64;
        let matrix = IntMatrix::from_rows(unknowns, rows[skip..].to_vec());
        let mut found: Vec<PRecurrence> = Vec::new();
        for v in matrix.nullspace() {
            let Some(rec) = assemble(&v, order, degree, valid_from) else {
                continue;
            };
            if holds_on_all_terms(&rec, seq) && !found.iter().any(|f| f.same_relation(&rec)) {
                found.push(rec);
            }
        }
        if !found.is_empty() {
            found.sort_by_key(|r| {
                r.coeffs()
                    .iter()
                    .map(|p| p.degree().unwrap_or(0))
                    .sum::<usize>()
            });
            return Ok(found);
        }
    }
    Ok(Vec::new())
}
