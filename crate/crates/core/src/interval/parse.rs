//! Prefix s-expression syntax for map expressions.
//!
//! ```text
//! expr  := NUMBER | (var K) | (add expr+) | (mul expr+) | (sub expr expr)
//!        | (neg expr) | (pow expr N) | (sign-case K expr expr)
//! map   := expr | (vec expr+)
//! NUMBER:= integer | p/q | decimal, optionally signed
//! ```
//! `(sign-case K A B)` is `A` where `x_K < 0` and `B` where `x_K ≥ 0`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Expr, IntervalError, MapExpr, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Sexp {
    Atom(String, usize, usize),
    List(Vec<Sexp>, usize, usize),
}

impl Sexp {
    fn pos(&self) -> (usize, usize) {
        match self {
            Sexp::Atom(_, l, c) | Sexp::List(_, l, c) => (*l, *c),
        }
    }
}

fn err(pos: (usize, usize), message: impl Into<String>) -> IntervalError {
    IntervalError::Parse {
        line: pos.0,
        column: pos.1,
        message: message.into(),
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl Lexer<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' || c == '#' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn sexp(&mut self) -> Result<Sexp, IntervalError> {
        self.skip_ws();
        let pos = (self.line, self.col);
        match self.chars.peek() {
            None => Err(err(pos, "unexpected end of input")),
            Some(')') => Err(err(pos, "unexpected `)`")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.chars.peek() {
                        None => return Err(err(pos, "unclosed `(`")),
                        Some(')') => {
                            self.bump();
                            return Ok(Sexp::List(items, pos.0, pos.1));
                        }
                        Some(_) => items.push(self.sexp()?),
                    }
                }
            }
            Some(_) => {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Ok(Sexp::Atom(s, pos.0, pos.1))
            }
        }
    }
}

fn read(src: &str) -> Result<Sexp, IntervalError> {
    let mut lx = Lexer {
        chars: src.chars().peekable(),
        line: 1,
        col: 1,
    };
    let s = lx.sexp()?;
    lx.skip_ws();
    if lx.chars.peek().is_some() {
        return Err(err((lx.line, lx.col), "trailing input after expression"));
    }
    Ok(s)
}

/// Parses `3`, `-7/2`, `0.125`; anything else is not a rational constant.
pub fn parse_rational(s: &str) -> Result<Rational, IntervalError> {
    let bad = || IntervalError::NonRationalConstant(s.to_string());
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let value = if let Some((p, q)) = body.split_once('/') {
        if !digits(p) || !digits(q) {
            return Err(bad());
        }
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Rational::new(p.parse().map_err(|_| bad())?, q)
    } else if let Some((i, f)) = body.split_once('.') {
        if !(digits(i) || i.is_empty()) || !(digits(f) || f.is_empty()) || (i.is_empty() && f.is_empty()) {
            return Err(bad());
        }
        let whole = format!("{i}{f}");
        let scale = num_traits::pow(BigInt::from(10), f.len());
        Rational::new(whole.parse().map_err(|_| bad())?, scale)
    } else if digits(body) {
        Rational::from_integer(body.parse().map_err(|_| bad())?)
    } else {
        return Err(bad());
    };
    Ok(if neg { -value } else { value })
}

fn looks_numeric(s: &str) -> bool {
    s.starts_with(|c: char| c.is_ascii_digit() || c == '-' || c == '+' || c == '.')
}

fn index(s: &Sexp, what: &str) -> Result<usize, IntervalError> {
    match s {
        Sexp::Atom(a, ..) => a
            .parse()
            .map_err(|_| err(s.pos(), format!("expected {what}, found `{a}`"))),
        Sexp::List(..) => Err(err(s.pos(), format!("expected {what}, found a list"))),
    }
}

fn arity(op: &str, args: &[Sexp], n: usize, pos: (usize, usize)) -> Result<(), IntervalError> {
    if args.len() != n {
        return Err(err(
            pos,
            format!("`{op}` takes {n} argument(s), got {}", args.len()),
        ));
    }
    Ok(())
}

fn expr(s: &Sexp) -> Result<Expr, IntervalError> {
    let items = match s {
        Sexp::Atom(a, ..) => {
            if looks_numeric(a) {
                return parse_rational(a).map(Expr::Const);
            }
            return Err(IntervalError::NonRationalConstant(a.clone()));
        }
        Sexp::List(items, ..) => items,
    };
    let pos = s.pos();
    let Some((head, args)) = items.split_first() else {
        return Err(err(pos, "empty list"));
    };
    let Sexp::Atom(op, ..) = head else {
        return Err(err(head.pos(), "operator must be a symbol"));
    };
    let many = |args: &[Sexp]| -> Result<Vec<Expr>, IntervalError> {
        if args.is_empty() {
            return Err(err(pos, format!("`{op}` needs at least one argument")));
        }
        args.iter().map(expr).collect()
    };
    Ok(match op.as_str() {
        "var" => {
            arity(op, args, 1, pos)?;
            Expr::Var(index(&args[0], "variable index")?)
        }
        "const" => {
            arity(op, args, 1, pos)?;
            match &args[0] {
                Sexp::Atom(a, ..) => Expr::Const(parse_rational(a)?),
                other => return Err(err(other.pos(), "expected a constant")),
            }
        }
        "add" | "+" => Expr::Add(many(args)?),
        "mul" | "*" => Expr::Mul(many(args)?),
        "sub" | "-" => {
            arity(op, args, 2, pos)?;
            Expr::sub(expr(&args[0])?, expr(&args[1])?)
        }
        "neg" => {
            arity(op, args, 1, pos)?;
            Expr::neg(expr(&args[0])?)
        }
        "pow" => {
            arity(op, args, 2, pos)?;
            let n = index(&args[1], "nonnegative integer exponent")?;
            let n = u32::try_from(n).map_err(|_| err(args[1].pos(), "exponent too large"))?;
            Expr::pow(expr(&args[0])?, n)
        }
        "sign-case" => {
            arity(op, args, 3, pos)?;
            Expr::sign_case(
                index(&args[0], "coordinate index")?,
                expr(&args[1])?,
                expr(&args[2])?,
            )
        }
        other => return Err(err(head.pos(), format!("unknown operator `{other}`"))),
    })
}

pub fn parse_expr(src: &str) -> Result<Expr, IntervalError> {
    expr(&read(src)?)
}

/// Parses a map; a bare expression is a map of dimension one.
pub fn parse_map(src: &str) -> Result<MapExpr, IntervalError> {
    let s = read(src)?;
    if let Sexp::List(items, ..) = &s {
        if let Some(Sexp::Atom(head, ..)) = items.first() {
            if head == "vec" {
                if items.len() == 1 {
                    return Err(err(s.pos(), "`vec` needs at least one component"));
                }
                return MapExpr::new(items[1..].iter().map(expr).collect::<Result<_, _>>()?);
            }
        }
    }
    MapExpr::scalar(expr(&s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rational;

    #[test]
    fn numbers() {
        assert_eq!(parse_rational("3").unwrap(), rational(3, 1));
        assert_eq!(parse_rational("-7/2").unwrap(), rational(-7, 2));
        assert_eq!(parse_rational("0.125").unwrap(), rational(1, 8));
        assert_eq!(parse_rational("-.5").unwrap(), rational(-1, 2));
        for bad in ["pi", "1e3", "1/0", "", "-", "2/x", "."] {
            assert!(
                matches!(parse_rational(bad), Err(IntervalError::NonRationalConstant(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn round_trip() {
        for src in [
            "(mul 2 (var 0))",
            "(neg (pow (var 0) 3))",
            "(sign-case 0 (mul -2 (var 0)) (add (var 0) 1/2))",
            "(vec (var 1) (sub (var 0) (var 1)))",
        ] {
            let m = parse_map(src).unwrap();
            assert_eq!(parse_map(&m.to_string()).unwrap(), m);
        }
    }

    #[test]
    fn errors_carry_position() {
        let e = parse_map("(mul 2\n  (foo 0))").unwrap_err();
        assert_eq!(
            e,
            IntervalError::Parse {
                line: 2,
                column: 4,
                message: "unknown operator `foo`".into()
            }
        );
        assert!(matches!(parse_map("(mul 2 (var 0)"), Err(IntervalError::Parse { .. })));
        assert!(matches!(parse_map("(mul sqrt2 (var 0))"), Err(IntervalError::NonRationalConstant(_))));
        assert!(matches!(parse_map("(var 1)"), Err(IntervalError::VariableOutOfRange { index: 1, dim: 1 })));
    }
}
