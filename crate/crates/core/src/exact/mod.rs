//! Exact arithmetic kernel: rationals, polynomials in `n` and rational
//! functions in `n`. Nothing here ever rounds.

mod poly;
mod ratfunc;
mod rational;

pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
    #[error("pole at n = {0}")]
    Pole(Rational),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}
