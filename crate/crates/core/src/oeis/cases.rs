//! Built-in verification cases and the named evaluators they refer to.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use super::bfile::{BFile, BFileError, SequenceId};
use crate::exact::{Polynomial, Rational, RationalFunction};
use crate::recurrence::PRecurrence;
use crate::series::{
    build_f, closed_form_a001711, closed_form_a001711_table, closed_form_a045406,
    closed_form_a045406_table, factorial, SequenceTable, SeriesError, TruncatedSeries,
    A001711_MIN_INDEX, A045406_MIN_INDEX,
};
use crate::symbolic::HarmonicAffineExpr;

const A045406_FIXTURE: &str = include_str!("../../fixtures/b045406.txt");
const A001711_FIXTURE: &str = include_str!("../../fixtures/b001711.txt");

#[derive(Debug, Error)]
pub enum CaseError {
    #[error("unknown built-in {kind} {name:?}")]
    UnknownName { kind: &'static str, name: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{origin}: {source}")]
    BFile { origin: String, source: BFileError },
}

/// Named closed-form evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    /// `(-1)^n (2 H_{n-3} - 3) (n-3)!`, `n >= 3`.
    A045406,
    /// `(n+3)! (2 H_{n+3} - 3) / 4`, `n >= 0`.
    A001711,
}

impl ClosedForm {
    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::A045406 => "A045406",
            ClosedForm::A001711 => "A001711",
        }
    }

    pub fn min_index(self) -> i64 {
        match self {
            ClosedForm::A045406 => A045406_MIN_INDEX,
            ClosedForm::A001711 => A001711_MIN_INDEX,
        }
    }

    pub fn eval(self, n: i64) -> Result<BigInt, SeriesError> {
        match self {
            ClosedForm::A045406 => closed_form_a045406(n),
            ClosedForm::A001711 => closed_form_a001711(n),
        }
    }

    pub fn table(self, lo: i64, hi: i64) -> Result<SequenceTable, SeriesError> {
        match self {
            ClosedForm::A045406 => closed_form_a045406_table(lo, hi),
            ClosedForm::A001711 => closed_form_a001711_table(lo, hi),
        }
    }
}

impl FromStr for ClosedForm {
    type Err = CaseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A045406" => Ok(ClosedForm::A045406),
            "A001711" => Ok(ClosedForm::A001711),
            _ => Err(CaseError::UnknownName {
                kind: "closed form",
                name: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Named exponential generating functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Egf {
    /// `((1+x) log(1+x))^2 / 2`
    A045406,
}

impl Egf {
    pub fn name(self) -> &'static str {
        match self {
            Egf::A045406 => "A045406",
        }
    }

    /// First index with a nonzero coefficient.
    pub fn offset(self) -> i64 {
        match self {
            Egf::A045406 => 2,
        }
    }

    pub fn build(self, order: usize) -> Result<TruncatedSeries, SeriesError> {
        match self {
            Egf::A045406 => build_f(order),
        }
    }
}

impl FromStr for Egf {
    type Err = CaseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A045406" => Ok(Egf::A045406),
            _ => Err(CaseError::UnknownName {
                kind: "e.g.f.",
                name: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for Egf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The factor pulled out of the recurrence's left-hand side before the
/// harmonic reduction. Taken as a hand-checked lemma, with
/// `lhs(n) = value(n) * expr(n)` spot-checked numerically.
#[derive(Debug, Clone, Copy)]
pub struct Prefactor {
    pub description: &'static str,
    pub value: fn(i64) -> Rational,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub expr: HarmonicAffineExpr,
    pub anchor: i64,
    pub expected_alpha: RationalFunction,
    pub expected_beta: RationalFunction,
    pub prefactor: Option<Prefactor>,
}

#[derive(Debug, Clone)]
pub enum ReferenceData {
    Bundled {
        name: &'static str,
        text: &'static str,
    },
    File(PathBuf),
}

impl ReferenceData {
    pub fn load(&self) -> Result<BFile, CaseError> {
        match self {
            ReferenceData::Bundled { name, text } => {
                BFile::parse(text.as_bytes()).map_err(|source| CaseError::BFile {
                    origin: format!("bundled {name}"),
                    source,
                })
            }
            ReferenceData::File(path) => {
                let bytes = std::fs::read(path).map_err(|source| CaseError::Io {
                    path: path.clone(),
                    source,
                })?;
                BFile::parse(&bytes).map_err(|source| CaseError::BFile {
                    origin: path.display().to_string(),
                    source,
                })
            }
        }
    }
}

impl fmt::Display for ReferenceData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReferenceData::Bundled { name, .. } => write!(f, "bundled {name}"),
            ReferenceData::File(p) => write!(f, "{}", p.display()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CaseDefinition {
    pub sequence_id: SequenceId,
    pub offset: i64,
    pub closed_form: Option<ClosedForm>,
    pub egf: Option<Egf>,
    pub recurrence: PRecurrence,
    pub reduction: Option<Reduction>,
    pub check_range: (i64, i64),
    pub reference: Option<ReferenceData>,
}

fn rf(coeffs: &[i64]) -> RationalFunction {
    RationalFunction::from_poly(Polynomial::from_ints(coeffs))
}

/// `H[n-1]/n - 2 H[n-2]/(n-1) + H[n-3]/(n-2)`: the sign-stripped
/// `[x^n]` coefficient of the A045406 e.g.f. for `n >= 4`.
pub fn egf_bracket_a045406() -> HarmonicAffineExpr {
    HarmonicAffineExpr::term(RationalFunction::reciprocal_linear(0), -1)
        .add(&HarmonicAffineExpr::term(
            &RationalFunction::reciprocal_linear(-1) * &RationalFunction::from_int(-2),
            -2,
        ))
        .add(&HarmonicAffineExpr::term(
            RationalFunction::reciprocal_linear(-2),
            -3,
        ))
}

/// `n (n-1) (n-2)`.
pub fn egf_bracket_denominator() -> RationalFunction {
    rf(&[0, 2, -3, 1])
}

/// `(n-3) h[n-3] - (2n-7) h[n-4] + (n-4) h[n-5]` with `h[m] = 2 H[m] - 3`.
pub fn mathar_reduced_lhs() -> HarmonicAffineExpr {
    HarmonicAffineExpr::h(-3)
        .scale(&rf(&[-3, 1]))
        .add(&HarmonicAffineExpr::h(-4).scale(&rf(&[7, -2])))
        .add(&HarmonicAffineExpr::h(-5).scale(&rf(&[-4, 1])))
}

/// `(n+3) h[n+3] - (2n+5) h[n+2] + (n+2) h[n+1]`.
pub fn a001711_reduced_lhs() -> HarmonicAffineExpr {
    HarmonicAffineExpr::h(3)
        .scale(&rf(&[3, 1]))
        .add(&HarmonicAffineExpr::h(2).scale(&rf(&[-5, -2])))
        .add(&HarmonicAffineExpr::h(1).scale(&rf(&[2, 1])))
}

fn mathar_prefactor(n: i64) -> Rational {
    let sign = if n % 2 == 0 { 1 } else { -1 };
    Rational::from(factorial(n - 5).expect("n >= 5") * BigInt::from(n - 4) * sign)
}

fn a001711_prefactor(n: i64) -> Rational {
    Rational::from(factorial(n + 1).expect("n >= -1") * BigInt::from(n + 2))
        * Rational::new(1, 4).expect("nonzero")
}

pub fn mathar_recurrence() -> PRecurrence {
    PRecurrence::new(
        vec![
            Polynomial::one(),
            Polynomial::from_ints(&[-7, 2]),
            Polynomial::from_ints(&[-4, 1]).pow(2),
        ],
        5,
    )
    .expect("valid recurrence")
}

pub fn a001711_recurrence() -> PRecurrence {
    PRecurrence::new(
        vec![
            Polynomial::one(),
            Polynomial::from_ints(&[-5, -2]),
            Polynomial::from_ints(&[2, 1]).pow(2),
        ],
        2,
    )
    .expect("valid recurrence")
}

/// A045406 (Mathar's recurrence) and A001711 (its harmonic-number twin).
pub fn builtin_cases() -> Vec<CaseDefinition> {
    vec![
        CaseDefinition {
            sequence_id: "A045406".parse().expect("valid id"),
            offset: 2,
            closed_form: Some(ClosedForm::A045406),
            egf: Some(Egf::A045406),
            recurrence: mathar_recurrence(),
            reduction: Some(Reduction {
                expr: mathar_reduced_lhs(),
                anchor: -4,
                expected_alpha: RationalFunction::zero(),
                expected_beta: RationalFunction::zero(),
                prefactor: Some(Prefactor {
                    description: "(-1)^n (n-5)! (n-4)",
                    value: mathar_prefactor,
                }),
            }),
            check_range: (5, 5000),
            reference: Some(ReferenceData::Bundled {
                name: "b045406.txt",
                text: A045406_FIXTURE,
            }),
        },
        CaseDefinition {
            sequence_id: "A001711".parse().expect("valid id"),
            offset: 0,
            closed_form: Some(ClosedForm::A001711),
            egf: None,
            recurrence: a001711_recurrence(),
            reduction: Some(Reduction {
                expr: a001711_reduced_lhs(),
                anchor: 2,
                expected_alpha: RationalFunction::zero(),
                expected_beta: RationalFunction::zero(),
                prefactor: Some(Prefactor {
                    description: "(n+1)! (n+2) / 4",
                    value: a001711_prefactor,
                }),
            }),
            check_range: (2, 2000),
            reference: Some(ReferenceData::Bundled {
                name: "b001711.txt",
                text: A001711_FIXTURE,
            }),
        },
    ]
}

pub fn builtin_case(id: &str) -> Option<CaseDefinition> {
    builtin_cases()
        .into_iter()
        .find(|c| c.sequence_id.as_str() == id)
}
