//! Text syntax for polynomials in `n`, harmonic-affine expressions and
//! recurrences.
//!
//! Expressions use `+ - * / ^`, parentheses, integer literals, the variable
//! `n`, and the atoms `H[n+k]` (harmonic number) and `h[n+k]` (`2 H - 3`).
//! Everything the core types print parses back to an equal value.
//!
//! Recurrences are `p0 = <poly>; p1 = <poly>; ...; from = <int>`, read as
//! `Σ p_i(n) a(n-i) = 0` for `n >= from`.

use holoproof_core::exact::{Polynomial, Rational, RationalFunction};
use holoproof_core::recurrence::{PRecurrence, RecurrenceError};
use holoproof_core::symbolic::HarmonicAffineExpr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("at column {col}: {message}")]
    Syntax { col: usize, message: String },
    #[error("expected a polynomial in n, got {0}")]
    NotPolynomial(String),
    #[error("expected a rational function of n, got {0}")]
    NotRationalFunction(String),
    #[error("recurrence: {0}")]
    Recurrence(String),
    #[error(transparent)]
    InvalidRecurrence(#[from] RecurrenceError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(i64),
    N,
    Atom { scaled: bool, shift: i64 },
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(col: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        col: col + 1,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v = src[start..i]
                    .parse()
                    .map_err(|_| syntax(start, "integer literal too large"))?;
                out.push((start, Tok::Int(v)));
                continue;
            }
            b'n' => Tok::N,
            b'H' | b'h' => {
                let (shift, end) = lex_atom(src, i)?;
                out.push((
                    start,
                    Tok::Atom {
                        scaled: c == b'h',
                        shift,
                    },
                ));
                i = end;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = src[i..].chars().next().expect("in bounds");
                return Err(syntax(i, format!("unexpected character {ch:?}")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

/// `H[n]`, `H[n+3]`, `H[n - 4]`; returns the shift and the end position.
fn lex_atom(src: &str, at: usize) -> Result<(i64, usize), ParseError> {
    let rest = &src[at + 1..];
    let close = rest
        .find(']')
        .ok_or_else(|| syntax(at, "unterminated harmonic atom"))?;
    let inner: String = rest
        .strip_prefix('[')
        .ok_or_else(|| syntax(at + 1, "expected `[` after harmonic atom name"))?[..close - 1]
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    let bad = || {
        syntax(
            at,
            format!("harmonic index must be n, n+k or n-k, got [{inner}]"),
        )
    };
    let offset = inner.strip_prefix('n').ok_or_else(bad)?;
    let shift = match offset.as_bytes().first() {
        None => 0,
        Some(b'+') => offset[1..].parse::<i64>().map_err(|_| bad())?,
        Some(b'-') => -offset[1..].parse::<i64>().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
    };
    Ok((shift, at + 1 + close + 1))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(c, _)| *c)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<HarmonicAffineExpr, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<HarmonicAffineExpr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let col = self.col();
            if self.eat(&Tok::Star) {
                let rhs = self.unary()?;
                acc = if let Some(c) = constant_of(&acc) {
                    rhs.scale(&c)
                } else if let Some(c) = constant_of(&rhs) {
                    acc.scale(&c)
                } else {
                    return Err(syntax(
                        col,
                        "product of two harmonic terms is not harmonic-affine",
                    ));
                };
            } else if self.eat(&Tok::Slash) {
                let rhs = self.unary()?;
                let c = constant_of(&rhs)
                    .ok_or_else(|| syntax(col, "cannot divide by a harmonic term"))?;
                acc = acc
                    .checked_div(&c)
                    .map_err(|_| syntax(col, "division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<HarmonicAffineExpr, ParseError> {
        if self.eat(&Tok::Minus) {
            return Ok(-&self.unary()?);
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<HarmonicAffineExpr, ParseError> {
        let base = self.atom()?;
        let col = self.col();
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let Some(Tok::Int(e)) = self.peek().cloned() else {
            return Err(syntax(
                self.col(),
                "exponent must be a non-negative integer",
            ));
        };
        self.pos += 1;
        let c = constant_of(&base)
            .ok_or_else(|| syntax(col, "cannot raise a harmonic term to a power"))?;
        let mut out = RationalFunction::one();
        for _ in 0..e {
            out = &out * &c;
        }
        Ok(HarmonicAffineExpr::constant(out))
    }

    fn atom(&mut self) -> Result<HarmonicAffineExpr, ParseError> {
        let col = self.col();
        let Some(tok) = self.peek().cloned() else {
            return Err(syntax(col, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Int(v) => Ok(HarmonicAffineExpr::constant(RationalFunction::from_int(v))),
            Tok::N => Ok(HarmonicAffineExpr::constant(RationalFunction::from_poly(
                Polynomial::var(),
            ))),
            Tok::Atom {
                scaled: false,
                shift,
            } => Ok(HarmonicAffineExpr::harmonic(shift)),
            Tok::Atom {
                scaled: true,
                shift,
            } => Ok(HarmonicAffineExpr::h(shift)),
            Tok::LParen => {
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(syntax(self.col(), "expected `)`"));
                }
                Ok(inner)
            }
            other => Err(syntax(col, format!("unexpected {}", describe(&other)))),
        }
    }
}

fn describe(tok: &Tok) -> &'static str {
    match tok {
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Slash => "`/`",
        Tok::Caret => "`^`",
        Tok::RParen => "`)`",
        _ => "token",
    }
}

fn constant_of(e: &HarmonicAffineExpr) -> Option<RationalFunction> {
    e.is_constant().then(|| e.remainder().clone())
}

pub fn parse_harmonic_expr(src: &str) -> Result<HarmonicAffineExpr, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        len: src.len(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(syntax(p.col(), "unexpected trailing input"));
    }
    Ok(e)
}

pub fn parse_rational_function(src: &str) -> Result<RationalFunction, ParseError> {
    let e = parse_harmonic_expr(src)?;
    constant_of(&e).ok_or_else(|| ParseError::NotRationalFunction(src.trim().to_string()))
}

pub fn parse_polynomial(src: &str) -> Result<Polynomial, ParseError> {
    parse_rational_function(src)?
        .as_polynomial()
        .cloned()
        .ok_or_else(|| ParseError::NotPolynomial(src.trim().to_string()))
}

pub fn parse_rational(src: &str) -> Result<Rational, ParseError> {
    parse_polynomial(src)?
        .as_constant()
        .ok_or_else(|| syntax(0, format!("expected a number, got {}", src.trim())))
}

/// `p0 = 1; p1 = 2*n - 7; p2 = (n-4)^2; from = 5`
pub fn parse_recurrence(src: &str) -> Result<PRecurrence, ParseError> {
    let mut coeffs: Vec<Polynomial> = Vec::new();
    let mut from: Option<i64> = None;
    for part in src.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part.split_once('=').ok_or_else(|| {
            ParseError::Recurrence(format!("expected `key = value`, got {part:?}"))
        })?;
        let key = key.trim();
        if key == "from" {
            if from.is_some() {
                return Err(ParseError::Recurrence("`from` given twice".into()));
            }
            from = Some(value.trim().parse().map_err(|_| {
                ParseError::Recurrence(format!("`from` must be an integer, got {:?}", value.trim()))
            })?);
        } else if let Some(idx) = key.strip_prefix('p').and_then(|d| d.parse::<usize>().ok()) {
            if idx != coeffs.len() {
                return Err(ParseError::Recurrence(format!(
                    "expected p{} next, got {key}",
                    coeffs.len()
                )));
            }
            coeffs.push(parse_polynomial(value)?);
        } else {
            return Err(ParseError::Recurrence(format!("unknown key {key:?}")));
        }
    }
    let from = from.ok_or_else(|| ParseError::Recurrence("missing `from = <n>`".into()))?;
    Ok(PRecurrence::new(coeffs, from)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use holoproof_core::oeis::{
        a001711_recurrence, a001711_reduced_lhs, egf_bracket_a045406, mathar_recurrence,
        mathar_reduced_lhs,
    };

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn polynomials() {
        assert_eq!(parse_polynomial("2*n - 7").unwrap(), poly(&[-7, 2]));
        assert_eq!(parse_polynomial("(n-4)^2").unwrap(), poly(&[16, -8, 1]));
        assert_eq!(parse_polynomial("-(2*n+5)").unwrap(), poly(&[-5, -2]));
        assert_eq!(
            parse_polynomial("3*(n+2)^2 - n^2").unwrap(),
            poly(&[12, 12, 2])
        );
        assert_eq!(parse_polynomial(" 0 ").unwrap(), Polynomial::zero());
        let half = parse_polynomial("1/2*n").unwrap();
        assert_eq!(half.coeff(1), Rational::new(1, 2).unwrap());
    }

    #[test]
    fn polynomial_display_reparses() {
        for p in [
            poly(&[-7, 2]),
            poly(&[16, -8, 1]),
            poly(&[-5, -2]),
            poly(&[48, -24, 3]),
            poly(&[1, 0, 1]),
            poly(&[0, 0, 0, -1]),
        ] {
            assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p, "{p}");
        }
        let q = poly(&[3, 0, 5]).scale(&Rational::new(-3, 4).unwrap());
        assert_eq!(parse_polynomial(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn harmonic_expressions_reparse() {
        for e in [
            mathar_reduced_lhs(),
            a001711_reduced_lhs(),
            egf_bracket_a045406(),
        ] {
            assert_eq!(parse_harmonic_expr(&e.to_string()).unwrap(), e, "{e}");
            let normal = e.normalize_default();
            assert_eq!(parse_harmonic_expr(&normal.to_string()).unwrap(), normal);
        }
    }

    #[test]
    fn mathar_expression_from_text() {
        let e = parse_harmonic_expr("(n-3)*h[n-3] - (2*n-7)*h[n-4] + (n-4)*h[n-5]").unwrap();
        assert_eq!(e, mathar_reduced_lhs());
        let bracket = parse_harmonic_expr("H[n-1]/n - 2*H[n-2]/(n-1) + H[n-3]/(n-2)").unwrap();
        assert_eq!(bracket, egf_bracket_a045406());
    }

    #[test]
    fn rejects_non_affine_and_garbage() {
        for bad in [
            "H[n]*H[n-1]",
            "1/H[n]",
            "H[n]^2",
            "2*",
            "(n",
            "n)",
            "x",
            "H[m]",
            "H[n*2]",
            "H(n)",
            "n^-1",
            "1/0",
        ] {
            assert!(parse_harmonic_expr(bad).is_err(), "{bad}");
        }
        assert!(matches!(
            parse_polynomial("1/n"),
            Err(ParseError::NotPolynomial(_))
        ));
        assert!(matches!(
            parse_polynomial("H[n]"),
            Err(ParseError::NotRationalFunction(_))
        ));
    }

    #[test]
    fn errors_point_at_column() {
        assert_eq!(
            parse_harmonic_expr("n + $"),
            Err(ParseError::Syntax {
                col: 5,
                message: "unexpected character '$'".into()
            })
        );
    }

    #[test]
    fn recurrences_round_trip() {
        for rec in [mathar_recurrence(), a001711_recurrence()] {
            assert_eq!(parse_recurrence(&rec.to_string()).unwrap(), rec);
        }
        let rec = parse_recurrence("p0 = 1; p1 = -(2*n+5); p2 = (n+2)^2; from = 2").unwrap();
        assert_eq!(rec, a001711_recurrence());
    }

    #[test]
    fn recurrence_errors() {
        for bad in [
            "p0 = 1; p1 = n",
            "p0 = 1; p2 = n; from = 2",
            "p0 = 1; q1 = n; from = 2",
            "p0 = 1; p1 = n/2; from = 2",
            "p0 = 1; p1 = n; from = x",
            "p0 = 1; p1 = n; from = 1; from = 2",
            "p0 = 0; p1 = n; from = 1",
            "p0 = 1; from = 1",
            "p0 = 1 p1 = n; from = 3",
        ] {
            assert!(parse_recurrence(bad).is_err(), "{bad}");
        }
    }
}
