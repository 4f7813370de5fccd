//! Exact real algebraic numbers: the residue field `k`.
//!
//! A value is either a rational or a root of an irreducible integer
//! polynomial of degree at least two, pinned down by an open rational
//! interval that contains exactly that root. Arithmetic computes a norm
//! polynomial by elimination, factors it, and refines the operands'
//! intervals until exactly one candidate root survives.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::factor::irreducible_factors;
use crate::mpoly::MPoly;
use crate::poly::{self, q, QPoly, ZPoly};

/// Intervals of freshly built values are tightened below this width.
const TIGHT_BITS: u32 = 24;

#[derive(Clone)]
pub struct RealAlg(Repr);

#[derive(Clone)]
enum Repr {
    Rational(BigRational),
    Root(Arc<Root>),
}

#[derive(Debug)]
struct Root {
    // irreducible, primitive, positive leading coefficient, degree >= 2
    minpoly: ZPoly,
    lo: BigRational,
    hi: BigRational,
}

/// A mutable copy of a value's isolating interval, used while refining.
#[derive(Clone)]
struct Bracket<'a> {
    poly: Option<&'a ZPoly>,
    lo: BigRational,
    hi: BigRational,
    lo_sign: Ordering,
}

impl<'a> Bracket<'a> {
    fn of(a: &'a RealAlg) -> Self {
        match &a.0 {
            Repr::Rational(r) => Bracket {
                poly: None,
                lo: r.clone(),
                hi: r.clone(),
                lo_sign: Ordering::Equal,
            },
            Repr::Root(root) => Bracket {
                poly: Some(&root.minpoly),
                lo: root.lo.clone(),
                hi: root.hi.clone(),
                lo_sign: poly::sign_at_int(&root.minpoly, &root.lo),
            },
        }
    }

    fn bisect(&mut self) {
        if let Some(p) = self.poly {
            let mid = (&self.lo + &self.hi) / q(2);
            if poly::sign_at_int(p, &mid) == self.lo_sign {
                self.lo = mid;
            } else {
                self.hi = mid;
            }
        }
    }

    /// Splits at a rational point; returns where the root lies relative to it.
    fn split_at(&mut self, x: &BigRational) -> Ordering {
        match self.poly {
            None => self.lo.cmp(x),
            Some(p) => {
                if *x <= self.lo {
                    return Ordering::Greater;
                }
                if *x >= self.hi {
                    return Ordering::Less;
                }
                if poly::sign_at_int(p, x) == self.lo_sign {
                    self.lo = x.clone();
                    Ordering::Greater
                } else {
                    self.hi = x.clone();
                    Ordering::Less
                }
            }
        }
    }

    fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

fn two_pow(bits: i64) -> BigRational {
    if bits >= 0 {
        BigRational::from_integer(BigInt::one() << bits as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-bits) as usize)
    }
}

fn interval_mul(
    a: (&BigRational, &BigRational),
    b: (&BigRational, &BigRational),
) -> (BigRational, BigRational) {
    let c = [a.0 * b.0, a.0 * b.1, a.1 * b.0, a.1 * b.1];
    let lo = c.iter().min().unwrap().clone();
    let hi = c.iter().max().unwrap().clone();
    (lo, hi)
}

/// Rational bounds `(l, u)` with `l^n <= x <= u^n` and `u - l <= eps`, for `x >= 0`.
fn nth_root_bounds(x: &BigRational, n: u32, eps: &BigRational) -> (BigRational, BigRational) {
    if x.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    let mut lo = BigRational::zero();
    let mut hi = if *x > BigRational::one() {
        x.clone()
    } else {
        BigRational::one()
    };
    while &hi - &lo > *eps {
        let mid = (&lo + &hi) / q(2);
        if num_traits::pow(mid.clone(), n as usize) <= *x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

fn exact_nth_root(x: &BigRational, n: u32) -> Option<BigRational> {
    let root = |v: &BigInt| {
        let r = v.nth_root(n);
        (num_traits::pow(r.clone(), n as usize) == *v).then_some(r)
    };
    let num = root(&x.numer().abs())?;
    let den = root(x.denom())?;
    let sign = if x.is_negative() { -BigInt::one() } else { BigInt::one() };
    Some(BigRational::new(sign * num, den))
}

fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Picks the unique root among `factors` lying in the intervals produced by
/// `bounds(level)`, which must contain the target and shrink to it.
fn select_root(
    factors: Vec<ZPoly>,
    mut bounds: impl FnMut(u32) -> (BigRational, BigRational),
) -> RealAlg {
    let seqs: Vec<Option<Vec<QPoly>>> = factors
        .iter()
        .map(|f| (f.len() > 2).then(|| poly::sturm_sequence(&poly::from_int(f))))
        .collect();
    for level in 0.. {
        let (lo, hi) = bounds(level);
        let mut hits = 0;
        let mut found: Option<usize> = None;
        for (i, f) in factors.iter().enumerate() {
            match &seqs[i] {
                None => {
                    let r = BigRational::new(-f[0].clone(), f[1].clone());
                    if lo <= r && r <= hi {
                        hits += 1;
                        found = Some(i);
                    }
                }
                Some(seq) => {
                    let n = poly::count_roots(seq, &lo, &hi);
                    if n > 0 {
                        hits += n;
                        found = Some(i);
                    }
                }
            }
        }
        if hits == 1 {
            let f = &factors[found.unwrap()];
            if f.len() == 2 {
                return RealAlg::from_rational(BigRational::new(-f[0].clone(), f[1].clone()));
            }
            return RealAlg::from_isolated(f.clone(), lo, hi);
        }
        assert!(hits > 0 || level < 4096, "root selection lost its target");
    }
    unreachable!()
}

impl RealAlg {
    pub fn from_rational(r: BigRational) -> Self {
        RealAlg(Repr::Rational(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(q(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `f` irreducible of degree >= 2 with exactly one root in the open `(lo, hi)`.
    fn from_isolated(f: ZPoly, lo: BigRational, hi: BigRational) -> Self {
        let mut b = Bracket {
            poly: Some(&f),
            lo_sign: poly::sign_at_int(&f, &lo),
            lo,
            hi,
        };
        let scale = b.lo.abs().max(b.hi.abs()).max(BigRational::one());
        let target = two_pow(-(TIGHT_BITS as i64)) * scale;
        while b.width() > target {
            b.bisect();
        }
        let (lo, hi) = (b.lo, b.hi);
        RealAlg(Repr::Root(Arc::new(Root { minpoly: f, lo, hi })))
    }

    /// The positive `n`-th root of a positive rational `c`. Once `c` is no
    /// `p`-th power for any prime `p | n`, `x^n - c` is irreducible.
    fn positive_radical(mut c: BigRational, mut n: u32) -> Self {
        'reduce: while n > 1 {
            for p in prime_divisors(n) {
                if let Some(r) = exact_nth_root(&c, p) {
                    c = r;
                    n /= p;
                    continue 'reduce;
                }
            }
            break;
        }
        if n == 1 {
            return Self::from_rational(c);
        }
        let mut f = vec![BigInt::zero(); n as usize + 1];
        f[0] = -c.numer().clone();
        f[n as usize] = c.denom().clone();
        let hi = c.max(BigRational::one()) + BigRational::one();
        Self::from_isolated(f, BigRational::zero(), hi)
    }

    /// Writes `self` as `±c^(1/b)` with `c > 0` rational when its minimal
    /// polynomial is a binomial.
    fn as_radical(&self) -> Option<(bool, BigRational, u32)> {
        let Repr::Root(root) = &self.0 else {
            return None;
        };
        let m = &root.minpoly;
        let b = m.len() - 1;
        if m[1..b].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let v = BigRational::new(-m[0].clone(), m[b].clone());
        let negative = self.is_negative();
        let c = if negative && b % 2 == 1 { -v } else { v };
        c.is_positive().then_some((negative, c, b as u32))
    }

    /// Builds a value from any squarefree integer polynomial and an interval
    /// `[lo, hi]` containing exactly one of its real roots.
    pub fn from_isolating(p: &[BigInt], lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument("interval endpoints out of order".into()));
        }
        let qp = poly::from_int(p);
        if poly::degree(&qp).unwrap_or(0) == 0 {
            return Err(Error::InvalidArgument("constant polynomial".into()));
        }
        let factors = irreducible_factors(&qp);
        let mut hits = Vec::new();
        for f in factors {
            if f.len() == 2 {
                let r = BigRational::new(-f[0].clone(), f[1].clone());
                if lo <= r && r <= hi {
                    hits.push(RealAlg::from_rational(r));
                }
            } else {
                let seq = poly::sturm_sequence(&poly::from_int(&f));
                // (lo, hi] plus lo itself, which cannot be a root of f
                if poly::count_roots(&seq, &lo, &hi) == 1 {
                    hits.push(RealAlg::from_isolated(f, lo.clone(), hi.clone()));
                } else if poly::count_roots(&seq, &lo, &hi) > 1 {
                    return Err(Error::InvalidArgument("interval isolates several roots".into()));
                }
            }
        }
        match hits.len() {
            1 => Ok(hits.pop().unwrap()),
            0 => Err(Error::InvalidArgument("interval contains no root".into())),
            _ => Err(Error::InvalidArgument("interval isolates several roots".into())),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(r) => Some(r),
            Repr::Root(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Canonical minimal polynomial, little-endian integer coefficients.
    pub fn minpoly(&self) -> ZPoly {
        match &self.0 {
            Repr::Rational(r) => vec![-r.numer().clone(), r.denom().clone()],
            Repr::Root(root) => root.minpoly.clone(),
        }
    }

    pub fn degree(&self) -> usize {
        self.minpoly().len() - 1
    }

    pub fn interval(&self) -> (BigRational, BigRational) {
        match &self.0 {
            Repr::Rational(r) => (r.clone(), r.clone()),
            Repr::Root(root) => (root.lo.clone(), root.hi.clone()),
        }
    }

    /// An isolating interval no wider than `2^-bits`.
    pub fn refine(&self, bits: u32) -> (BigRational, BigRational) {
        let mut b = Bracket::of(self);
        let target = two_pow(-(bits as i64));
        while b.width() > target {
            b.bisect();
        }
        (b.lo, b.hi)
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.refine(60);
        let mid = (lo + hi) / q(2);
        mid.to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Rational(r) if r.is_zero())
    }

    pub fn signum(&self) -> Ordering {
        match &self.0 {
            Repr::Rational(r) => r.cmp(&BigRational::zero()),
            Repr::Root(root) => {
                if root.lo >= BigRational::zero() {
                    Ordering::Greater
                } else if root.hi <= BigRational::zero() {
                    Ordering::Less
                } else {
                    Bracket::of(self).split_at(&BigRational::zero())
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        match &self.0 {
            Repr::Rational(r) => Self::from_rational(-r),
            Repr::Root(root) => {
                let mut p: ZPoly = root
                    .minpoly
                    .iter()
                    .enumerate()
                    .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                    .collect();
                if p.last().unwrap().is_negative() {
                    p.iter_mut().for_each(|c| *c = -&*c);
                }
                RealAlg(Repr::Root(Arc::new(Root {
                    minpoly: p,
                    lo: -&root.hi,
                    hi: -&root.lo,
                })))
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Self::from_rational(a + b),
            (Repr::Rational(r), Repr::Root(root)) | (Repr::Root(root), Repr::Rational(r)) => {
                if r.is_zero() {
                    return RealAlg(Repr::Root(root.clone()));
                }
                // minpoly of a + r is m(x - r)
                let shifted = shift(&poly::from_int(&root.minpoly), &-r.clone());
                let f = poly::primitive(&shifted);
                RealAlg(Repr::Root(Arc::new(Root {
                    minpoly: f,
                    lo: &root.lo + r,
                    hi: &root.hi + r,
                })))
            }
            _ => self.combine(other, |x, s, t| x.sub(&s).sub(&t), |a, b| {
                (&a.lo + &b.lo, &a.hi + &b.hi)
            }),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Self::from_rational(a * b),
            (Repr::Rational(r), Repr::Root(root)) | (Repr::Root(root), Repr::Rational(r)) => {
                if r.is_zero() {
                    return Self::zero();
                }
                // minpoly of r a is m(x / r), scaled
                let m = poly::from_int(&root.minpoly);
                let scaled: QPoly = m
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c / num_traits::pow(r.clone(), i))
                    .collect();
                let f = poly::primitive(&scaled);
                let (lo, hi) = interval_mul((&root.lo, &root.hi), (r, r));
                RealAlg(Repr::Root(Arc::new(Root { minpoly: f, lo, hi })))
            }
            _ => {
                if let (Some((sa, ca, ba)), Some((sb, cb, bb))) =
                    (self.as_radical(), other.as_radical())
                {
                    let l = num_integer::lcm(ba, bb);
                    let c = num_traits::pow(ca, (l / ba) as usize)
                        * num_traits::pow(cb, (l / bb) as usize);
                    let r = Self::positive_radical(c, l);
                    return if sa != sb { r.neg() } else { r };
                }
                self.combine(other, |x, s, t| x.sub(&s.mul(&t)), |a, b| {
                    interval_mul((&a.lo, &a.hi), (&b.lo, &b.hi))
                })
            }
        }
    }

    /// Generic binary operation on two irrational operands: `relation(x, s, t)`
    /// vanishes at `x = s op t`, `op_interval` encloses the result.
    fn combine(
        &self,
        other: &Self,
        relation: impl Fn(MPoly, MPoly, MPoly) -> MPoly,
        op_interval: impl Fn(&Bracket, &Bracket) -> (BigRational, BigRational),
    ) -> Self {
        let rel = relation(MPoly::var(3, 0), MPoly::var(3, 1), MPoly::var(3, 2));
        let norm = rel
            .eliminate(1, &poly::from_int(&self.minpoly()))
            .eliminate(2, &poly::from_int(&other.minpoly()))
            .to_univariate(0);
        let factors = irreducible_factors(&norm);
        let mut ba = Bracket::of(self);
        let mut bb = Bracket::of(other);
        select_root(factors, |level| {
            if level > 0 {
                ba.bisect();
                bb.bisect();
            }
            op_interval(&ba, &bb)
        })
    }

    pub fn inv(&self) -> Result<Self> {
        match &self.0 {
            Repr::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Self::from_rational(r.recip()))
                }
            }
            Repr::Root(_) => {
                let mut b = Bracket::of(self);
                b.split_at(&BigRational::zero());
                let Repr::Root(root) = &self.0 else { unreachable!() };
                let mut p: ZPoly = root.minpoly.iter().rev().cloned().collect();
                if p.last().unwrap().is_negative() {
                    p.iter_mut().for_each(|c| *c = -&*c);
                }
                Ok(RealAlg::from_isolated(p, b.hi.recip(), b.lo.recip()))
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self^e` for a rational exponent; negative bases need an odd denominator.
    pub fn pow_rational(&self, e: &BigRational) -> Result<Self> {
        let n = e.numer().abs().to_u32().ok_or_else(|| {
            Error::InvalidArgument("exponent numerator too large".into())
        })?;
        let d = e.denom().to_u32().ok_or_else(|| {
            Error::InvalidArgument("exponent denominator too large".into())
        })?;
        let r = self.root(d)?.pow(n);
        if e.is_negative() {
            r.inv()
        } else {
            Ok(r)
        }
    }

    /// The nonnegative (even `n`) or real (odd `n`) `n`-th root.
    pub fn root(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("zeroth root".into()));
        }
        if n == 1 || self.is_zero() {
            return Ok(self.clone());
        }
        match self.signum() {
            Ordering::Less if n % 2 == 0 => return Err(Error::NegativeEvenRoot),
            Ordering::Less => return Ok(self.neg().root(n)?.neg()),
            _ => {}
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::positive_radical(r.clone(), n));
        }
        if let Some((false, c, b)) = self.as_radical() {
            if let Some(bn) = b.checked_mul(n) {
                return Ok(Self::positive_radical(c, bn));
            }
        }
        // minpoly(x^n)
        let m = self.minpoly();
        let mut composed = vec![BigRational::zero(); (m.len() - 1) * n as usize + 1];
        for (i, c) in m.iter().enumerate() {
            composed[i * n as usize] = BigRational::from_integer(c.clone());
        }
        let factors = irreducible_factors(&composed);
        let mut b = Bracket::of(self);
        b.split_at(&BigRational::zero());
        select_root(factors, |level| {
            if level > 0 {
                b.bisect();
            }
            let eps = two_pow(-(level as i64) - 4);
            let (lo, _) = nth_root_bounds(&b.lo, n, &eps);
            let (_, hi) = nth_root_bounds(&b.hi, n, &eps);
            (lo, hi)
        })
        .pipe(Ok)
    }

    /// `2^q` for rational `q`, as the positive root of `x^b - 2^a`.
    pub fn pow2(e: &BigRational) -> Self {
        let a = e.numer().to_i64().expect("exponent numerator fits in i64");
        let b = e.denom().to_u32().expect("exponent denominator fits in u32");
        Self::from_rational(two_pow(a))
            .root(b)
            .expect("positive base has every root")
    }

    /// Recognizes `2^q` exactly: returns `q` when `self = 2^q` for rational `q`.
    pub fn log2_exact(&self) -> Option<BigRational> {
        if !self.is_positive() {
            return None;
        }
        let m = self.minpoly();
        let b = m.len() - 1;
        if m[1..b].iter().any(|c| !c.is_zero()) {
            return None;
        }
        // self^b = -m0/mb must be 2^a
        let v = BigRational::new(-m[0].clone(), m[b].clone());
        let a = exact_log2(&v)?;
        let e = BigRational::new(BigInt::from(a), BigInt::from(b as u64));
        // x^b - 2^a may factor when gcd(a, b) > 1; then self has lower degree.
        (RealAlg::pow2(&e) == *self).then_some(e)
    }

    pub fn floor(&self) -> BigInt {
        match &self.0 {
            Repr::Rational(r) => r.floor().to_integer(),
            Repr::Root(_) => {
                let mut b = Bracket::of(self);
                loop {
                    let f = b.lo.floor();
                    if b.hi <= &f + BigRational::one() {
                        return f.to_integer();
                    }
                    b.bisect();
                }
            }
        }
    }

    /// Exact comparison. Equality is decided by a common factor of the two
    /// minimal polynomials having a root in both intervals.
    pub fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => a.cmp(b),
            (Repr::Rational(r), Repr::Root(_)) => Bracket::of(other).split_at(r).reverse(),
            (Repr::Root(_), Repr::Rational(r)) => Bracket::of(self).split_at(r),
            (Repr::Root(ra), Repr::Root(rb)) => {
                let mut a = Bracket::of(self);
                let mut b = Bracket::of(other);
                if a.hi > b.lo && b.hi > a.lo {
                    let g = poly::gcd(
                        &poly::from_int(&ra.minpoly),
                        &poly::from_int(&rb.minpoly),
                    );
                    if poly::degree(&g).unwrap_or(0) >= 1 {
                        let lo = a.lo.clone().max(b.lo.clone());
                        let hi = a.hi.clone().min(b.hi.clone());
                        let seq = poly::sturm_sequence(&g);
                        if poly::count_roots(&seq, &lo, &hi) >= 1 {
                            return Ordering::Equal;
                        }
                    }
                }
                loop {
                    if a.hi <= b.lo {
                        return Ordering::Less;
                    }
                    if b.hi <= a.lo {
                        return Ordering::Greater;
                    }
                    if a.width() >= b.width() {
                        a.bisect();
                    } else {
                        b.bisect();
                    }
                }
            }
        }
    }

    /// The smallest real root of an odd-degree polynomial with coefficients
    /// in `k` (little-endian).
    pub fn odd_root_of_poly(coeffs: &[RealAlg]) -> Result<Self> {
        let mut coeffs = coeffs.to_vec();
        while coeffs.last().is_some_and(RealAlg::is_zero) {
            coeffs.pop();
        }
        let deg = coeffs.len().saturating_sub(1);
        if coeffs.is_empty() || deg % 2 == 0 {
            return Err(Error::EvenDegree(deg));
        }
        let irrational: Vec<usize> = (0..coeffs.len())
            .filter(|&i| !coeffs[i].is_rational())
            .collect();
        let nvars = 1 + irrational.len();
        let mut p = MPoly::zero(nvars);
        let x = MPoly::var(nvars, 0);
        let mut xpow = MPoly::constant(nvars, BigRational::one());
        for (i, c) in coeffs.iter().enumerate() {
            let term = match c.as_rational() {
                Some(r) => xpow.scale(r),
                None => {
                    let v = 1 + irrational.iter().position(|&j| j == i).unwrap();
                    xpow.mul(&MPoly::var(nvars, v))
                }
            };
            p = p.add(&term);
            xpow = xpow.mul(&x);
        }
        for (k, &i) in irrational.iter().enumerate() {
            p = p.eliminate(1 + k, &poly::from_int(&coeffs[i].minpoly()));
        }
        let norm = p.to_univariate(0);
        let mut candidates: Vec<RealAlg> = Vec::new();
        for f in irreducible_factors(&norm) {
            if f.len() == 2 {
                candidates.push(Self::from_rational(BigRational::new(
                    -f[0].clone(),
                    f[1].clone(),
                )));
                continue;
            }
            for (lo, hi) in poly::isolate_roots(&poly::from_int(&f)) {
                candidates.push(Self::from_isolated(f.clone(), lo, hi));
            }
        }
        candidates.sort_by(|a, b| a.cmp(b));
        for c in candidates {
            if irrational.is_empty() || eval_poly(&coeffs, &c).is_zero() {
                return Ok(c);
            }
        }
        unreachable!("an odd-degree polynomial has a real root")
    }
}

fn eval_poly(coeffs: &[RealAlg], x: &RealAlg) -> RealAlg {
    coeffs
        .iter()
        .rev()
        .fold(RealAlg::zero(), |acc, c| acc.mul(x).add(c))
}

fn exact_log2(v: &BigRational) -> Option<i64> {
    let is_pow2 = |n: &BigInt| n.is_positive() && (n & (n - BigInt::one())).is_zero();
    if v.denom().is_one() && is_pow2(v.numer()) {
        Some(v.numer().bits() as i64 - 1)
    } else if v.numer().is_one() && is_pow2(v.denom()) {
        Some(-(v.denom().bits() as i64 - 1))
    } else {
        None
    }
}

/// `p(x + r)` by repeated synthetic division (Taylor shift).
fn shift(p: &[BigRational], r: &BigRational) -> QPoly {
    let mut c = p.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &c[j + 1] * r;
            c[j] += t;
        }
    }
    c
}

trait Pipe: Sized {
    fn pipe<T>(self, f: impl FnOnce(Self) -> T) -> T {
        f(self)
    }
}
impl<T> Pipe for T {}

impl PartialEq for RealAlg {
    fn eq(&self, other: &Self) -> bool {
        RealAlg::cmp(self, other) == Ordering::Equal
    }
}

impl Eq for RealAlg {}

impl PartialOrd for RealAlg {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(RealAlg::cmp(self, other))
    }
}

impl Ord for RealAlg {
    fn cmp(&self, other: &Self) -> Ordering {
        RealAlg::cmp(self, other)
    }
}

impl From<BigRational> for RealAlg {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for RealAlg {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for RealAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(r) => write!(f, "{r}"),
            Repr::Root(_) => {
                if let Some(e) = self.log2_exact() {
                    return write!(f, "2^({e})");
                }
                write!(f, "{:.6}~", self.to_f64())
            }
        }
    }
}

impl fmt::Debug for RealAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(r) => write!(f, "RealAlg({r})"),
            Repr::Root(root) => write!(
                f,
                "RealAlg(root of {:?} in ({}, {}))",
                root.minpoly.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                root.lo,
                root.hi
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> RealAlg {
        RealAlg::from_rational(BigRational::new(n.into(), d.into()))
    }

    fn sqrt(n: i64) -> RealAlg {
        RealAlg::from_int(n).root(2).unwrap()
    }

    fn ints(v: &[i64]) -> ZPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn rational_embedding_is_canonical() {
        for (n, d) in [(0, 1), (3, 2), (-7, 1)] {
            let a = r(n, d);
            assert!(a.is_rational());
            assert_eq!(a.minpoly(), ints(&[-n, d]));
        }
    }

    #[test]
    fn sqrt2_squared_is_two() {
        let s = sqrt(2);
        assert_eq!(s.minpoly(), ints(&[-2, 0, 1]));
        let p = s.mul(&s);
        assert!(p.is_rational());
        assert_eq!(p, RealAlg::from_int(2));
        assert!(s.add(&s.neg()).is_zero());
    }

    #[test]
    fn sqrt2_plus_sqrt3() {
        let s = sqrt(2).add(&sqrt(3));
        assert_eq!(s.minpoly(), ints(&[1, 0, -10, 0, 1]));
        let (lo, hi) = s.refine(20);
        assert!(lo < BigRational::new(3147.into(), 1000.into()));
        assert!(hi > BigRational::new(3146.into(), 1000.into()));
    }

    #[test]
    fn comparisons() {
        assert_eq!(sqrt(2).cmp(&sqrt(2)), Ordering::Equal);
        assert_eq!(sqrt(2).cmp(&r(141, 100)), Ordering::Greater);
        assert_eq!(r(0, 1).cmp(&r(1, 1)), Ordering::Less);
        assert_eq!(sqrt(2).cmp(&sqrt(3)), Ordering::Less);
        // sqrt(8) / 2 == sqrt(2) through a different construction path
        let other = sqrt(8).div(&RealAlg::from_int(2)).unwrap();
        assert_eq!(other, sqrt(2));
    }

    #[test]
    fn roots() {
        assert_eq!(RealAlg::from_int(4).root(2).unwrap(), RealAlg::from_int(2));
        assert_eq!(RealAlg::from_int(-8).root(3).unwrap(), RealAlg::from_int(-2));
        assert!(matches!(RealAlg::from_int(-1).root(2), Err(Error::NegativeEvenRoot)));
        let c = sqrt(2).root(3).unwrap();
        assert_eq!(c.pow(6), RealAlg::from_int(2));
    }

    #[test]
    fn odd_roots_of_polynomials() {
        let p = |c: &[i64]| c.iter().map(|&x| RealAlg::from_int(x)).collect::<Vec<_>>();
        assert_eq!(RealAlg::odd_root_of_poly(&p(&[-8, 0, 0, 1])).unwrap(), RealAlg::from_int(2));
        assert_eq!(RealAlg::odd_root_of_poly(&p(&[-5, 1])).unwrap(), RealAlg::from_int(5));
        let w = RealAlg::odd_root_of_poly(&p(&[-5, -2, 0, 1])).unwrap();
        assert!((w.to_f64() - 2.0945514815).abs() < 1e-9);
        assert!(matches!(
            RealAlg::odd_root_of_poly(&p(&[1, 0, 1])),
            Err(Error::EvenDegree(2))
        ));
        // smallest root of (x+1)(x-1)(x-2)
        let s = RealAlg::odd_root_of_poly(&p(&[2, -1, -2, 1])).unwrap();
        assert_eq!(s, RealAlg::from_int(-1));
        // x^3 - sqrt2 has the real root 2^(1/6)
        let c = RealAlg::odd_root_of_poly(&[sqrt(2).neg(), RealAlg::zero(), RealAlg::zero(), RealAlg::one()])
            .unwrap();
        assert_eq!(c, RealAlg::pow2(&BigRational::new(1.into(), 6.into())));
    }

    #[test]
    fn floors() {
        assert_eq!(r(3, 2).floor(), BigInt::from(1));
        assert_eq!(sqrt(2).floor(), BigInt::from(1));
        assert_eq!(r(-1, 2).floor(), BigInt::from(-1));
        assert_eq!(sqrt(2).neg().floor(), BigInt::from(-2));
    }

    #[test]
    fn powers_of_two() {
        assert_eq!(RealAlg::pow2(&q(1)), RealAlg::from_int(2));
        assert_eq!(RealAlg::pow2(&q(0)), RealAlg::one());
        assert_eq!(RealAlg::pow2(&BigRational::new(1.into(), 2.into())), sqrt(2));
        assert_eq!(RealAlg::pow2(&q(-3)), r(1, 8));
        let e = BigRational::new(3.into(), 5.into());
        assert_eq!(RealAlg::pow2(&e).log2_exact(), Some(e));
        assert_eq!(sqrt(3).log2_exact(), None);
        assert_eq!(RealAlg::from_int(8).log2_exact(), Some(q(3)));
    }

    #[test]
    fn radicals_multiply_without_factoring() {
        let a = RealAlg::pow2(&BigRational::new(1.into(), 6.into()));
        let b = RealAlg::pow2(&BigRational::new(1.into(), 3.into()));
        assert_eq!(a.mul(&b), sqrt(2));
        assert_eq!(a.mul(&b.neg()), sqrt(2).neg());
        let c = r(4, 1).root(6).unwrap();
        assert_eq!(c.minpoly(), ints(&[-2, 0, 0, 1]));
        let d = sqrt(3).root(3).unwrap();
        assert_eq!(d.minpoly(), ints(&[-3, 0, 0, 0, 0, 0, 1]));
        assert_eq!(sqrt(2).mul(&sqrt(8)), RealAlg::from_int(4));
    }

    #[test]
    fn from_isolating_accepts_reducible_input() {
        // (x^2 - 2)(x - 5), isolate sqrt2
        let p = ints(&[10, -2, -5, 1]);
        let a = RealAlg::from_isolating(&p, q(1), q(2)).unwrap();
        assert_eq!(a, sqrt(2));
        assert!(RealAlg::from_isolating(&p, q(-2), q(6)).is_err());
    }
}
