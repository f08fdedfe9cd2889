//! Exact rational interval arithmetic and map expressions.

mod expr;
mod parse;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

pub use expr::{Expr, MapExpr};
pub use parse::{parse_expr, parse_map, parse_rational};

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for dimension {dim}")]
    VariableOutOfRange { index: usize, dim: usize },
    #[error("constant `{0}` is not a rational number")]
    NonRationalConstant(String),
    #[error("empty interval [{lo}, {hi}]")]
    Empty { lo: String, hi: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub fn rational(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, IntervalError> {
        if lo > hi {
            return Err(IntervalError::Empty {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_i64(lo: i64, hi: i64) -> Self {
        Interval::new(rational(lo, 1), rational(hi, 1)).expect("lo <= hi")
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn split(&self) -> (Interval, Interval) {
        let m = self.midpoint();
        (
            Interval {
                lo: self.lo.clone(),
                hi: m.clone(),
            },
            Interval {
                lo: m,
                hi: self.hi.clone(),
            },
        )
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let p = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = p.iter().min().expect("four products").clone();
        let hi = p.iter().max().expect("four products").clone();
        Interval { lo, hi }
    }

    /// `xⁿ` over the interval. Odd powers are monotone; even powers have
    /// their minimum at 0 when the interval straddles it.
    pub fn pow(&self, n: u32) -> Interval {
        if n == 0 {
            return Interval::point(Rational::from_integer(1.into()));
        }
        let lo = num_traits::pow(self.lo.clone(), n as usize);
        let hi = num_traits::pow(self.hi.clone(), n as usize);
        if n % 2 == 1 || !self.lo.is_negative() {
            Interval { lo, hi }
        } else if !self.hi.is_positive() {
            Interval { lo: hi, hi: lo }
        } else {
            Interval {
                lo: Rational::zero(),
                hi: lo.max(hi),
            }
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Product of closed intervals in ℝᵈ.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntervalBox {
    coords: Vec<Interval>,
}

impl IntervalBox {
    pub fn new(coords: Vec<Interval>) -> Result<Self, IntervalError> {
        if coords.is_empty() {
            return Err(IntervalError::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(IntervalBox { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coord(&self, i: usize) -> &Interval {
        &self.coords[i]
    }

    pub fn coords(&self) -> &[Interval] {
        &self.coords
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim() && self.coords.iter().zip(x).all(|(c, v)| c.contains(v))
    }

    pub fn contains_box(&self, other: &IntervalBox) -> bool {
        self.dim() == other.dim()
            && self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(a, b)| a.contains_interval(b))
    }

    pub fn intersects(&self, other: &IntervalBox) -> bool {
        self.dim() == other.dim()
            && self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(a, b)| a.intersects(b))
    }

    pub fn hull(&self, other: &IntervalBox) -> IntervalBox {
        assert_eq!(self.dim(), other.dim());
        IntervalBox {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.hull(b))
                .collect(),
        }
    }

    /// Replaces coordinate `i`.
    pub fn with_coord(&self, i: usize, iv: Interval) -> IntervalBox {
        let mut coords = self.coords.clone();
        coords[i] = iv;
        IntervalBox { coords }
    }

    /// Halves the box along its widest coordinate.
    pub fn bisect(&self) -> (IntervalBox, IntervalBox) {
        let i = (0..self.dim())
            .max_by(|&a, &b| {
                self.coords[a]
                    .width()
                    .cmp(&self.coords[b].width())
                    .then(b.cmp(&a))
            })
            .expect("nonempty box");
        let (l, r) = self.coords[i].split();
        (self.with_coord(i, l), self.with_coord(i, r))
    }
}

impl fmt::Display for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Image enclosure of `map` over `input`.
pub fn evaluate_interval(map: &MapExpr, input: &IntervalBox) -> Result<IntervalBox, IntervalError> {
    map.eval_box(input)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: (i64, i64), b: (i64, i64)) -> Interval {
        Interval::new(rational(a.0, a.1), rational(b.0, b.1)).unwrap()
    }

    #[test]
    fn even_power_straddling_zero() {
        assert_eq!(Interval::from_i64(-2, 1).pow(2), Interval::from_i64(0, 4));
        assert_eq!(Interval::from_i64(-3, -1).pow(2), Interval::from_i64(1, 9));
        assert_eq!(Interval::from_i64(-2, 1).pow(3), Interval::from_i64(-8, 1));
    }

    #[test]
    fn multiplication_sign_cases() {
        let a = Interval::from_i64(-1, 2);
        let b = Interval::from_i64(-3, 1);
        assert_eq!(a.mul(&b), Interval::from_i64(-6, 3));
    }

    #[test]
    fn empty_interval_rejected() {
        assert!(Interval::new(rational(1, 1), rational(0, 1)).is_err());
    }

    #[test]
    fn split_covers() {
        let a = iv((-1, 2), (3, 4));
        let (l, r) = a.split();
        assert_eq!(l.hull(&r), a);
        assert_eq!(l.hi(), r.lo());
    }
}
