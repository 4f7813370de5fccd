//! Expression syntax: parser and printer.
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := factor (("*" | "/") factor)*
//! factor   := "-" factor | atom ("^" "(" rational ")" | "^" integer)?
//! atom     := rational | "x" | "(" expr ")" | ("exp2" | "log2" | "sqrt") "(" expr ")"
//! rational := integer ("/" positive-integer)?
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Num(BigRational),
    X,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, BigRational),
    Neg(Box<Expr>),
    Exp2(Box<Expr>),
    Log2(Box<Expr>),
    Sqrt(Box<Expr>),
}

/// A syntax node with its byte span in the source. Equality ignores spans.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: (usize, usize),
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Expr {}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at offset {pos}: expected {expected}")]
pub struct SyntaxError {
    pub pos: usize,
    pub expected: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn node(kind: ExprKind, start: usize, end: usize) -> Expr {
    Expr {
        kind,
        span: (start, end),
    }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn fail<T>(&mut self, expected: &str) -> Result<T, SyntaxError> {
        self.skip_ws();
        Err(SyntaxError {
            pos: self.pos,
            expected: expected.to_string(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<(), SyntaxError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(&format!("'{}'", c as char))
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn integer(&mut self) -> Result<BigInt, SyntaxError> {
        let neg = self.eat(b'-');
        match self.digits() {
            Some(n) => Ok(if neg { -n } else { n }),
            None => self.fail("integer"),
        }
    }

    fn rational(&mut self) -> Result<BigRational, SyntaxError> {
        let n = self.integer()?;
        let save = self.pos;
        if self.eat(b'/') && self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let at = self.pos;
            match self.digits() {
                Some(d) if !d.is_zero() => Ok(BigRational::new(n, d)),
                _ => {
                    self.pos = at;
                    self.fail("positive integer")
                }
            }
        } else {
            self.pos = save;
            Ok(BigRational::from_integer(n))
        }
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let start = self.peek().map(|_| self.pos).unwrap_or(self.pos);
        let mut lhs = self.term()?;
        loop {
            let kind: fn(Box<Expr>, Box<Expr>) -> ExprKind = if self.eat(b'+') {
                ExprKind::Add
            } else if self.eat(b'-') {
                ExprKind::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            let end = rhs.span.1;
            lhs = node(kind(Box::new(lhs), Box::new(rhs)), start, end);
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        let mut lhs = self.factor()?;
        loop {
            let kind: fn(Box<Expr>, Box<Expr>) -> ExprKind = if self.eat(b'*') {
                ExprKind::Mul
            } else if self.eat(b'/') {
                ExprKind::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.factor()?;
            let end = rhs.span.1;
            lhs = node(kind(Box::new(lhs), Box::new(rhs)), start, end);
        }
    }

    fn factor(&mut self) -> Result<Expr, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat(b'-') {
            let inner = self.factor()?;
            let end = inner.span.1;
            return Ok(match inner.kind {
                ExprKind::Num(q) => node(ExprKind::Num(-q), start, end),
                _ => node(ExprKind::Neg(Box::new(inner)), start, end),
            });
        }
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = if self.eat(b'(') {
            let q = self.rational()?;
            self.expect(b')')?;
            q
        } else {
            match self.peek() {
                Some(c) if c == b'-' || c.is_ascii_digit() => BigRational::from_integer(self.integer()?),
                _ => return self.fail("'(' or integer"),
            }
        };
        Ok(node(ExprKind::Pow(Box::new(base), e), start, self.pos))
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let q = self.rational()?;
                Ok(node(ExprKind::Num(q), start, self.pos))
            }
            Some(b'(') => {
                self.pos += 1;
                let mut e = self.expr()?;
                self.expect(b')')?;
                e.span = (start, self.pos);
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let mut end = self.pos;
                while end < self.src.len() && self.src[end].is_ascii_alphanumeric() {
                    end += 1;
                }
                let word = std::str::from_utf8(&self.src[self.pos..end]).unwrap_or("");
                let func: Option<fn(Box<Expr>) -> ExprKind> = match word {
                    "x" => {
                        self.pos = end;
                        return Ok(node(ExprKind::X, start, end));
                    }
                    "exp2" => Some(ExprKind::Exp2),
                    "log2" => Some(ExprKind::Log2),
                    "sqrt" => Some(ExprKind::Sqrt),
                    _ => None,
                };
                let Some(func) = func else {
                    return self.fail("number, 'x', '(' or function name");
                };
                self.pos = end;
                self.expect(b'(')?;
                let arg = self.expr()?;
                self.expect(b')')?;
                Ok(node(func(Box::new(arg)), start, self.pos))
            }
            _ => self.fail("number, 'x', '(' or function name"),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.fail("operator or end of input");
    }
    Ok(e)
}

const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

fn precedence(k: &ExprKind) -> u8 {
    match k {
        ExprKind::Add(..) | ExprKind::Sub(..) => SUM,
        ExprKind::Mul(..) | ExprKind::Div(..) => PRODUCT,
        ExprKind::Neg(_) => UNARY,
        ExprKind::Pow(..) => POWER,
        ExprKind::Num(q) if q.is_negative() || !q.denom().is_one() => UNARY,
        _ => ATOM,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if precedence(&e.kind) < min {
        write!(f, "(")?;
        write_expr(f, e)?;
        write!(f, ")")
    } else {
        write_expr(f, e)
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match &e.kind {
        ExprKind::Num(q) => write!(f, "{q}"),
        ExprKind::X => write!(f, "x"),
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
            write_at(f, a, SUM)?;
            write!(f, " {} ", if matches!(e.kind, ExprKind::Add(..)) { '+' } else { '-' })?;
            write_at(f, b, PRODUCT)
        }
        ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
            write_at(f, a, PRODUCT)?;
            write!(f, "{}", if matches!(e.kind, ExprKind::Mul(..)) { '*' } else { '/' })?;
            write_at(f, b, ATOM)
        }
        ExprKind::Neg(a) => {
            write!(f, "-")?;
            write_at(f, a, POWER)
        }
        ExprKind::Pow(a, q) => {
            write_at(f, a, ATOM)?;
            if q.is_integer() {
                write!(f, "^{q}")
            } else {
                write!(f, "^({q})")
            }
        }
        ExprKind::Exp2(a) => write!(f, "exp2({a})"),
        ExprKind::Log2(a) => write!(f, "log2({a})"),
        ExprKind::Sqrt(a) => write!(f, "sqrt({a})"),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: ExprKind) -> Box<Expr> {
        Box::new(node(k, 0, 0))
    }

    fn int(v: i64) -> ExprKind {
        ExprKind::Num(BigRational::from_integer(v.into()))
    }

    #[test]
    fn division_by_difference() {
        let e = parse_expr("x/(x-1)").unwrap();
        let want = ExprKind::Div(n(ExprKind::X), n(ExprKind::Sub(n(ExprKind::X), n(int(1)))));
        assert_eq!(e.kind, want);
    }

    #[test]
    fn nested_functions() {
        let e = parse_expr("exp2(log2(x)+1/2)").unwrap();
        let half = ExprKind::Num(BigRational::new(1.into(), 2.into()));
        let want = ExprKind::Exp2(n(ExprKind::Add(n(ExprKind::Log2(n(ExprKind::X))), n(half))));
        assert_eq!(e.kind, want);
    }

    #[test]
    fn double_caret_is_rejected_at_offset_two() {
        let err = parse_expr("x^^2").unwrap_err();
        assert_eq!(err.pos, 2);
    }

    #[test]
    fn powers_and_signs() {
        let e = parse_expr("x^-2").unwrap();
        assert_eq!(e.kind, ExprKind::Pow(n(ExprKind::X), BigRational::from_integer((-2).into())));
        let e = parse_expr("x^(-1/3)").unwrap();
        assert_eq!(e.kind, ExprKind::Pow(n(ExprKind::X), BigRational::new((-1).into(), 3.into())));
        assert_eq!(parse_expr("-3").unwrap().kind, int(-3));
        assert!(matches!(parse_expr("-x^2").unwrap().kind, ExprKind::Neg(_)));
        assert!(parse_expr("x +").is_err());
        assert!(parse_expr("1/0").is_err());
        assert!(matches!(parse_expr("1/x").unwrap().kind, ExprKind::Div(..)));
        assert!(parse_expr("foo(x)").is_err());
        assert!(parse_expr("x)").is_err());
    }

    #[test]
    fn printer_round_trips() {
        for s in [
            "x/(x-1)",
            "exp2(log2(x)+1/2)",
            "(1/2)^3 - -x",
            "x - (x - 1)",
            "x/(2*x)",
            "-(x+1)^(2/3)",
            "(-3)^2*sqrt(x^2+x)",
            "x/1/2",
        ] {
            let e = parse_expr(s).unwrap();
            let printed = e.to_string();
            assert_eq!(parse_expr(&printed).unwrap(), e, "{s} printed as {printed}");
        }
    }
}
