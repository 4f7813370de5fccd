//! Evaluation of expressions to series.
//!
//! Divisions, roots and negative powers are expanded with a relative cutoff:
//! the result is exact above `cutoff * v(result)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

use rcx_core::{exp_series, log_series, rat, Error, GenId, Monomial, RealAlg, Registry, Series};

use crate::expr::{Expr, ExprKind};

#[derive(Debug, Error)]
#[error("at offset {}..{}: {source}", span.0, span.1)]
pub struct EvalError {
    pub span: (usize, usize),
    #[source]
    pub source: Error,
}

/// Evaluation environment: the monomial registry and the relative cutoff.
#[derive(Clone, Debug)]
pub struct Env {
    pub reg: Registry,
    pub cutoff: Monomial,
}

pub const DEFAULT_LADDER: usize = 8;

impl Env {
    pub fn new(ladder: usize) -> Result<Self, Error> {
        Ok(Self {
            reg: Registry::ladder(ladder)?,
            cutoff: Monomial::gen_pow(GenId(0), rat(-8, 1)),
        })
    }

    pub fn with_cutoff(mut self, cutoff: Monomial) -> Self {
        self.cutoff = cutoff;
        self
    }

    /// The absolute cutoff for a result of valuation `v`.
    fn scaled(&self, v: &Monomial) -> Monomial {
        self.cutoff.mul(v)
    }

    fn inv(&self, s: &Series) -> Result<Series, Error> {
        if s.is_zero() && s.is_exact() {
            return Err(Error::DivisionByZero);
        }
        let v = s.valuation()?;
        s.inv(&self.scaled(&v.inv()), &self.reg)
    }

    fn root(&self, s: &Series, n: u32) -> Result<Series, Error> {
        if s.is_zero() && s.is_exact() {
            return Ok(Series::zero());
        }
        let v = s.valuation()?;
        let frac = BigRational::new(BigInt::one(), BigInt::from(n));
        s.root(n, &self.scaled(&v.pow(&frac)), &self.reg)
    }

    fn pow(&self, s: &Series, e: &BigRational) -> Result<Series, Error> {
        let q: u32 = e
            .denom()
            .try_into()
            .map_err(|_| Error::InvalidArgument("exponent denominator too large".into()))?;
        let p: u32 = e
            .numer()
            .abs()
            .try_into()
            .map_err(|_| Error::InvalidArgument("exponent numerator too large".into()))?;
        let base = if q == 1 { s.clone() } else { self.root(s, q)? };
        let pos = base.pow(p, &self.reg)?;
        if e.is_negative() {
            self.inv(&pos)
        } else {
            Ok(pos)
        }
    }

    /// Evaluates `e`; `exp2` may register new generators.
    pub fn eval(&mut self, e: &Expr) -> Result<Series, EvalError> {
        let wrap = |source| EvalError {
            span: e.span,
            source,
        };
        let out = match &e.kind {
            ExprKind::Num(q) => Ok(Series::constant(RealAlg::from_rational(q.clone()))),
            ExprKind::X => Ok(Series::monomial(Monomial::gen(GenId(0)))),
            ExprKind::Neg(a) => Ok(self.eval(a)?.neg()),
            ExprKind::Add(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                a.add(&b, &self.reg)
            }
            ExprKind::Sub(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                a.sub(&b, &self.reg)
            }
            ExprKind::Mul(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                a.mul(&b, &self.reg)
            }
            ExprKind::Div(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.inv(&b).and_then(|ib| a.mul(&ib, &self.reg))
            }
            ExprKind::Pow(a, q) => {
                let a = self.eval(a)?;
                self.pow(&a, q)
            }
            ExprKind::Sqrt(a) => {
                let a = self.eval(a)?;
                self.root(&a, 2)
            }
            ExprKind::Exp2(a) => {
                let a = self.eval(a)?;
                exp_series(&a, &mut self.reg)
            }
            ExprKind::Log2(a) => {
                let a = self.eval(a)?;
                log_series(&a, &self.reg)
            }
        };
        out.map_err(wrap)
    }
}

/// Reads a monomial off an expression such as `x^-8` or `log2(x)^2`.
pub fn eval_monomial(env: &mut Env, e: &Expr) -> Result<Monomial, EvalError> {
    let s = env.eval(e)?;
    match s.terms() {
        [t] if s.is_exact() && t.coeff == RealAlg::one() => Ok(t.mono.clone()),
        _ => Err(EvalError {
            span: e.span,
            source: Error::InvalidArgument("expected a single monomial".into()),
        }),
    }
}
