//! Fraction-free (Bareiss) elimination over the integers and the nullspace
//! read off from the resulting echelon form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::Rational;

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix shape mismatch");
        IntMatrix { rows, cols, data }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        let data: Vec<BigInt> = rows.into_iter().flatten().collect();
        Self::new(n, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    fn at(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place Bareiss elimination to row echelon form. Returns the pivot
    /// columns, one per nonzero row.
    pub fn bareiss_echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let pivot = self.get(r, c).clone();
            for i in r + 1..self.rows {
                let factor = self.get(i, c).clone();
                for j in c + 1..self.cols {
                    let num = &pivot * self.get(i, j) - &factor * self.get(r, j);
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss step must divide exactly");
                    *self.at(i, j) = q;
                }
                *self.at(i, c) = BigInt::zero();
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().bareiss_echelon().len()
    }

    /// Basis of `{x : self · x = 0}` as primitive integer vectors, one per
    /// free column, in increasing free-column order.
    pub fn nullspace(&self) -> Vec<Vec<BigInt>> {
        let mut m = self.clone();
        let pivots = m.bareiss_echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate().rev() {
                    let mut acc = Rational::zero();
                    for j in pc + 1..self.cols {
                        if !x[j].is_zero() {
                            acc += &(Rational::from(m.get(row, j).clone()) * &x[j]);
                        }
                    }
                    x[pc] = -acc
                        .checked_div(&Rational::from(m.get(row, pc).clone()))
                        .expect("pivot is nonzero");
                }
                primitive_integer_vector(&x)
            })
            .collect()
    }
}

/// Scales a rational vector to coprime integers, keeping its direction.
pub fn primitive_integer_vector(x: &[Rational]) -> Vec<BigInt> {
    let den_lcm = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = x
        .iter()
        .map(|v| v.numer() * (&den_lcm / v.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() || g.is_one() {
        return ints;
    }
    let g = g.abs();
    ints.into_iter().map(|v| v / &g).collect()
}
