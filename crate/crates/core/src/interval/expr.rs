use std::fmt;

use num_traits::Signed;

use super::{Interval, IntervalBox, IntervalError, Rational};

/// Scalar expression in the variables `x₀ … x_{d-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Expr {
    Var(usize),
    Const(Rational),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    /// `neg` where `x_coord < 0`, `nonneg` where `x_coord ≥ 0`.
    SignCase {
        coord: usize,
        neg: Box<Expr>,
        nonneg: Box<Expr>,
    },
}

impl Expr {
    pub fn var(i: usize) -> Expr {
        Expr::Var(i)
    }

    pub fn constant(c: Rational) -> Expr {
        Expr::Const(c)
    }

    pub fn int(c: i64) -> Expr {
        Expr::Const(Rational::from_integer(c.into()))
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(vec![a, b])
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(vec![a, b])
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }

    pub fn pow(a: Expr, n: u32) -> Expr {
        Expr::Pow(Box::new(a), n)
    }

    pub fn sign_case(coord: usize, neg: Expr, nonneg: Expr) -> Expr {
        Expr::SignCase {
            coord,
            neg: Box::new(neg),
            nonneg: Box::new(nonneg),
        }
    }

    /// Largest variable index used, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Var(i) => Some(*i),
            Expr::Const(_) => None,
            Expr::Add(xs) | Expr::Mul(xs) => xs.iter().filter_map(Expr::max_var).max(),
            Expr::Sub(a, b) => a.max_var().max(b.max_var()),
            Expr::Neg(a) | Expr::Pow(a, _) => a.max_var(),
            Expr::SignCase { coord, neg, nonneg } => {
                Some(*coord).max(neg.max_var()).max(nonneg.max_var())
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Var(_) | Expr::Const(_) => 0,
            Expr::Add(xs) | Expr::Mul(xs) => 1 + xs.iter().map(Expr::depth).max().unwrap_or(0),
            Expr::Sub(a, b) => 1 + a.depth().max(b.depth()),
            Expr::Neg(a) | Expr::Pow(a, _) => 1 + a.depth(),
            Expr::SignCase { neg, nonneg, .. } => 1 + neg.depth().max(nonneg.depth()),
        }
    }

    pub fn eval_point(&self, x: &[Rational]) -> Rational {
        match self {
            Expr::Var(i) => x[*i].clone(),
            Expr::Const(c) => c.clone(),
            Expr::Add(xs) => xs.iter().map(|e| e.eval_point(x)).sum(),
            Expr::Mul(xs) => xs.iter().map(|e| e.eval_point(x)).product(),
            Expr::Sub(a, b) => a.eval_point(x) - b.eval_point(x),
            Expr::Neg(a) => -a.eval_point(x),
            Expr::Pow(a, n) => num_traits::pow(a.eval_point(x), *n as usize),
            Expr::SignCase { coord, neg, nonneg } => {
                if x[*coord].is_negative() {
                    neg.eval_point(x)
                } else {
                    nonneg.eval_point(x)
                }
            }
        }
    }

    pub fn eval_interval(&self, b: &IntervalBox) -> Interval {
        match self {
            Expr::Var(i) => b.coord(*i).clone(),
            Expr::Const(c) => Interval::point(c.clone()),
            Expr::Add(xs) => fold(xs, b, Interval::add),
            Expr::Mul(xs) => fold(xs, b, Interval::mul),
            Expr::Sub(a, c) => a.eval_interval(b).sub(&c.eval_interval(b)),
            Expr::Neg(a) => a.eval_interval(b).neg(),
            Expr::Pow(a, n) => a.eval_interval(b).pow(*n),
            Expr::SignCase { coord, neg, nonneg } => {
                let x = b.coord(*coord);
                let zero = Rational::from_integer(0.into());
                if x.hi().is_negative() {
                    neg.eval_interval(b)
                } else if !x.lo().is_negative() {
                    nonneg.eval_interval(b)
                } else {
                    // both branches, each on its own half of the box
                    let left = Interval::new(x.lo().clone(), zero.clone()).expect("lo < 0");
                    let right = Interval::new(zero, x.hi().clone()).expect("hi >= 0");
                    let l = neg.eval_interval(&b.with_coord(*coord, left));
                    let r = nonneg.eval_interval(&b.with_coord(*coord, right));
                    l.hull(&r)
                }
            }
        }
    }
}

fn fold(xs: &[Expr], b: &IntervalBox, op: fn(&Interval, &Interval) -> Interval) -> Interval {
    let mut it = xs.iter().map(|e| e.eval_interval(b));
    let first = it.next().expect("n-ary operation with no operands");
    it.fold(first, |acc, v| op(&acc, &v))
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, op: &str, xs: &[&Expr]| {
            write!(f, "({op}")?;
            for x in xs {
                write!(f, " {x}")?;
            }
            write!(f, ")")
        };
        match self {
            Expr::Var(i) => write!(f, "(var {i})"),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Add(xs) => list(f, "add", &xs.iter().collect::<Vec<_>>()),
            Expr::Mul(xs) => list(f, "mul", &xs.iter().collect::<Vec<_>>()),
            Expr::Sub(a, b) => list(f, "sub", &[a, b]),
            Expr::Neg(a) => list(f, "neg", &[a]),
            Expr::Pow(a, n) => write!(f, "(pow {a} {n})"),
            Expr::SignCase { coord, neg, nonneg } => {
                write!(f, "(sign-case {coord} {neg} {nonneg})")
            }
        }
    }
}

/// A map ℝᵈ → ℝᵈ given by one expression per output coordinate.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MapExpr {
    components: Vec<Expr>,
}

impl MapExpr {
    pub fn new(components: Vec<Expr>) -> Result<Self, IntervalError> {
        let dim = components.len();
        if dim == 0 {
            return Err(IntervalError::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        for c in &components {
            if let Some(i) = c.max_var().filter(|&i| i >= dim) {
                return Err(IntervalError::VariableOutOfRange { index: i, dim });
            }
        }
        Ok(MapExpr { components })
    }

    pub fn scalar(e: Expr) -> Result<Self, IntervalError> {
        MapExpr::new(vec![e])
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }

    fn check_dim(&self, found: usize) -> Result<(), IntervalError> {
        if found != self.dim() {
            return Err(IntervalError::DimensionMismatch {
                expected: self.dim(),
                found,
            });
        }
        Ok(())
    }

    pub fn eval_point(&self, x: &[Rational]) -> Result<Vec<Rational>, IntervalError> {
        self.check_dim(x.len())?;
        Ok(self.components.iter().map(|e| e.eval_point(x)).collect())
    }

    pub fn eval_box(&self, b: &IntervalBox) -> Result<IntervalBox, IntervalError> {
        self.check_dim(b.dim())?;
        IntervalBox::new(self.components.iter().map(|e| e.eval_interval(b)).collect())
    }
}

impl fmt::Display for MapExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [e] = self.components.as_slice() {
            return write!(f, "{e}");
        }
        write!(f, "(vec")?;
        for e in &self.components {
            write!(f, " {e}")?;
        }
        write!(f, ")")
    }
}
