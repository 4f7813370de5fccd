//! Hahn series with finite support and an optional truncation cutoff.
//!
//! A series with cutoff `c` is exact for monomials strictly above `c` and
//! says nothing below it. Operations propagate the coarsest cutoff.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, Registry};
use crate::residue::RealAlg;

/// Expansion steps allowed before inversion or rooting gives up.
const EXPANSION_CAP: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: RealAlg,
    pub mono: Monomial,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Series {
    terms: Vec<Term>,
    cutoff: Option<Monomial>,
}

/// `s = infinite + constant + infinitesimal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSplit {
    pub infinite: Series,
    pub constant: RealAlg,
    pub infinitesimal: Series,
}

fn cmp_desc(reg: &Registry, a: &Term, b: &Term) -> Result<Ordering> {
    Ok(reg.cmp(&a.mono, &b.mono)?.reverse())
}

/// Merge sort with a fallible comparator, largest monomial first.
fn sort_terms(reg: &Registry, mut v: Vec<Term>) -> Result<Vec<Term>> {
    if v.len() <= 1 {
        return Ok(v);
    }
    let right = v.split_off(v.len() / 2);
    let left = sort_terms(reg, v)?;
    let right = sort_terms(reg, right)?;
    let mut out = Vec::with_capacity(left.len() + right.len());
    let mut l = left.into_iter().peekable();
    let mut r = right.into_iter().peekable();
    while let (Some(a), Some(b)) = (l.peek(), r.peek()) {
        if cmp_desc(reg, a, b)? == Ordering::Greater {
            out.push(r.next().unwrap());
        } else {
            out.push(l.next().unwrap());
        }
    }
    out.extend(l);
    out.extend(r);
    Ok(out)
}

/// `binom(a, k) = a (a-1) ... (a-k+1) / k!`.
fn binomial(a: &BigRational, k: usize) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, i| {
        let i = BigRational::from_integer(BigInt::from(i as u64));
        acc * (a - &i) / (i + BigRational::one())
    })
}

fn max_cutoff(
    reg: &Registry,
    a: Option<&Monomial>,
    b: Option<&Monomial>,
) -> Result<Option<Monomial>> {
    Ok(match (a, b) {
        (None, None) => None,
        (Some(c), None) | (None, Some(c)) => Some(c.clone()),
        (Some(c), Some(d)) => Some(reg.max(c, d)?),
    })
}

impl Series {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(RealAlg::one())
    }

    pub fn constant(c: RealAlg) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(RealAlg::one(), m)
    }

    pub fn term(coeff: RealAlg, mono: Monomial) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        Self {
            terms: vec![Term { coeff, mono }],
            cutoff: None,
        }
    }

    /// Zero with an explicit cutoff: "some element below `c`".
    pub fn unknown_below(c: Monomial) -> Self {
        Self {
            terms: Vec::new(),
            cutoff: Some(c),
        }
    }

    /// Builds a series from unordered terms, merging equal monomials and
    /// dropping zeros and terms at or below the cutoff.
    pub fn from_terms(
        terms: Vec<(RealAlg, Monomial)>,
        cutoff: Option<Monomial>,
        reg: &Registry,
    ) -> Result<Self> {
        let mut acc: HashMap<Monomial, RealAlg> = HashMap::new();
        let mut order = Vec::new();
        for (c, m) in terms {
            match acc.get_mut(&m) {
                Some(x) => *x = x.add(&c),
                None => {
                    order.push(m.clone());
                    acc.insert(m, c);
                }
            }
        }
        let mut out = Vec::new();
        for m in order {
            let c = acc.remove(&m).unwrap();
            if c.is_zero() {
                continue;
            }
            if let Some(cut) = &cutoff {
                if reg.cmp(&m, cut)? != Ordering::Greater {
                    continue;
                }
            }
            out.push(Term { coeff: c, mono: m });
        }
        Ok(Self {
            terms: sort_terms(reg, out)?,
            cutoff,
        })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn cutoff(&self) -> Option<&Monomial> {
        self.cutoff.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.cutoff.is_none()
    }

    /// No stored terms. With a cutoff this means "zero above the cutoff".
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn sign(&self) -> Ordering {
        self.leading().map_or(Ordering::Equal, |t| t.coeff.signum())
    }

    pub fn valuation(&self) -> Result<Monomial> {
        self.leading()
            .map(|t| t.mono.clone())
            .ok_or(Error::ZeroSeries)
    }

    /// Valuation if nonzero, otherwise the cutoff (an upper bound).
    fn size(&self) -> Option<&Monomial> {
        self.leading().map(|t| &t.mono).or(self.cutoff.as_ref())
    }

    /// Same terms, coarsened to cutoff `max(self.cutoff, c)`.
    pub fn with_cutoff(&self, c: &Monomial, reg: &Registry) -> Result<Self> {
        let cut = max_cutoff(reg, self.cutoff.as_ref(), Some(c))?.unwrap();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if reg.cmp(&t.mono, &cut)? == Ordering::Greater {
                terms.push(t.clone());
            }
        }
        Ok(Self {
            terms,
            cutoff: Some(cut),
        })
    }

    pub fn without_cutoff(&self) -> Self {
        Self {
            terms: self.terms.clone(),
            cutoff: None,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.neg(),
                    mono: t.mono.clone(),
                })
                .collect(),
            cutoff: self.cutoff.clone(),
        }
    }

    pub fn scale(&self, k: &RealAlg) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.mul(k),
                    mono: t.mono.clone(),
                })
                .collect(),
            cutoff: self.cutoff.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone(),
                    mono: t.mono.mul(m),
                })
                .collect(),
            cutoff: self.cutoff.as_ref().map(|c| c.mul(m)),
        }
    }

    pub fn add(&self, other: &Self, reg: &Registry) -> Result<Self> {
        let cutoff = max_cutoff(reg, self.cutoff.as_ref(), other.cutoff.as_ref())?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => reg.cmp(&a.mono, &b.mono)?,
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].coeff.add(&other.terms[j].coeff);
                    if !c.is_zero() {
                        out.push(Term {
                            coeff: c,
                            mono: self.terms[i].mono.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        if let Some(c) = &cutoff {
            let mut kept = Vec::with_capacity(out.len());
            for t in out {
                if reg.cmp(&t.mono, c)? == Ordering::Greater {
                    kept.push(t);
                }
            }
            out = kept;
        }
        Ok(Self { terms: out, cutoff })
    }

    pub fn sub(&self, other: &Self, reg: &Registry) -> Result<Self> {
        self.add(&other.neg(), reg)
    }

    pub fn mul(&self, other: &Self, reg: &Registry) -> Result<Self> {
        let ca = match (&self.cutoff, other.size()) {
            (Some(c), Some(v)) => Some(c.mul(v)),
            _ => None,
        };
        let cb = match (&other.cutoff, self.size()) {
            (Some(c), Some(v)) => Some(c.mul(v)),
            _ => None,
        };
        let cutoff = max_cutoff(reg, ca.as_ref(), cb.as_ref())?;
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                prods.push((a.coeff.mul(&b.coeff), a.mono.mul(&b.mono)));
            }
        }
        Self::from_terms(prods, cutoff, reg)
    }

    pub fn pow(&self, n: u32, reg: &Registry) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self, reg)?;
        }
        Ok(acc)
    }

    /// The restriction `s_{<h}`: terms with monomial strictly below `h`.
    pub fn truncate(&self, h: &Monomial, reg: &Registry) -> Result<Self> {
        let mut terms = Vec::new();
        for t in &self.terms {
            if reg.cmp(&t.mono, h)? == Ordering::Less {
                terms.push(t.clone());
            }
        }
        Ok(Self {
            terms,
            cutoff: self.cutoff.clone(),
        })
    }

    /// Splits against the monomial 1. An unknown tail (cutoff) travels with
    /// the infinitesimal part, and with the infinite part too when the
    /// cutoff is not below 1.
    pub fn split(&self, reg: &Registry) -> Result<SeriesSplit> {
        let mut inf = Vec::new();
        let mut constant = RealAlg::zero();
        let mut small = Vec::new();
        for t in &self.terms {
            match reg.sign(&t.mono)? {
                Ordering::Greater => inf.push(t.clone()),
                Ordering::Equal => constant = t.coeff.clone(),
                Ordering::Less => small.push(t.clone()),
            }
        }
        let coarse = match &self.cutoff {
            Some(c) => reg.sign(c)? != Ordering::Less,
            None => false,
        };
        Ok(SeriesSplit {
            infinite: Self {
                terms: inf,
                cutoff: if coarse { self.cutoff.clone() } else { None },
            },
            constant,
            infinitesimal: Self {
                terms: small,
                cutoff: self.cutoff.clone(),
            },
        })
    }

    pub fn is_purely_infinite(&self, reg: &Registry) -> Result<bool> {
        for t in &self.terms {
            if reg.sign(&t.mono)? != Ordering::Greater {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Agreement on every monomial strictly above `c`.
    pub fn equal_above(&self, other: &Self, c: &Monomial, reg: &Registry) -> Result<bool> {
        let d = self.sub(other, reg)?.without_cutoff();
        Ok(d.with_cutoff(c, reg)?.is_zero())
    }

    /// Writes `self = u m (1 + eps)` and returns `(u, m, eps)` with `eps`
    /// exact and infinitesimal.
    fn factor_leading(&self) -> Result<(RealAlg, Monomial, Self)> {
        let lead = self.leading().ok_or(Error::ZeroSeries)?;
        let u = lead.coeff.clone();
        let m = lead.mono.clone();
        let inv_u = u.inv()?;
        let rest = Self {
            terms: self.terms[1..].to_vec(),
            cutoff: None,
        };
        let eps = rest.mul_monomial(&m.inv()).scale(&inv_u);
        Ok((u, m, eps))
    }

    /// `lead * sum_k coeff(k) eps^k`, keeping terms above `cut`.
    fn expand(
        lead_coeff: &RealAlg,
        lead_mono: &Monomial,
        eps: &Self,
        coeff: impl Fn(usize) -> RealAlg,
        cut: &Monomial,
        reg: &Registry,
    ) -> Result<Self> {
        if eps.is_zero() && eps.is_exact() {
            return Ok(Self::term(lead_coeff.clone(), lead_mono.clone()));
        }
        let threshold = cut.div(lead_mono);
        let keep = |s: Self| -> Result<Self> {
            Ok(s.with_cutoff(&threshold, reg)?.without_cutoff())
        };
        let mut acc = keep(Self::one())?;
        let mut power = Self::one();
        for k in 1..=EXPANSION_CAP + 1 {
            power = keep(power.mul(eps, reg)?)?;
            if power.is_zero() {
                let out = acc.mul_monomial(lead_mono).scale(lead_coeff);
                return out.with_cutoff(cut, reg);
            }
            if k > EXPANSION_CAP {
                break;
            }
            acc = acc.add(&power.scale(&coeff(k)), reg)?;
        }
        Err(Error::CutoffUnreachable(EXPANSION_CAP))
    }

    /// `1/self`, exact above `cutoff` (and above what the input's own
    /// cutoff allows).
    pub fn inv(&self, cutoff: &Monomial, reg: &Registry) -> Result<Self> {
        let (u, m, eps) = self.factor_leading()?;
        let minv = m.inv();
        let mut cut = cutoff.clone();
        if let Some(c) = &self.cutoff {
            cut = reg.max(&cut, &c.mul(&minv).mul(&minv))?;
        }
        let one = RealAlg::one();
        Self::expand(
            &u.inv()?,
            &minv,
            &eps,
            |k| if k % 2 == 0 { one.clone() } else { one.neg() },
            &cut,
            reg,
        )
    }

    /// The `n`-th root, nonnegative for even `n`.
    pub fn root(&self, n: u32, cutoff: &Monomial, reg: &Registry) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("zeroth root".into()));
        }
        if self.is_zero() {
            return if self.cutoff.is_none() {
                Ok(Self::zero())
            } else {
                Err(Error::ZeroSeries)
            };
        }
        let (u, m, eps) = self.factor_leading()?;
        let root_u = u.root(n)?;
        let frac = BigRational::new(BigInt::one(), BigInt::from(n));
        let root_m = m.pow(&frac);
        let mut cut = cutoff.clone();
        if let Some(c) = &self.cutoff {
            cut = reg.max(&cut, &c.mul(&m.pow(&(frac.clone() - BigRational::one()))))?;
        }
        Self::expand(
            &root_u,
            &root_m,
            &eps,
            |k| RealAlg::from_rational(binomial(&frac, k)),
            &cut,
            reg,
        )
    }

    /// `self^(p/q)` with `q > 0`, using the given cutoff for roots and inverses.
    pub fn pow_rational(&self, e: &BigRational, cutoff: &Monomial, reg: &Registry) -> Result<Self> {
        let q: u32 = e
            .denom()
            .try_into()
            .map_err(|_| Error::InvalidArgument("exponent denominator too large".into()))?;
        let p: u32 = num_traits::Signed::abs(e.numer())
            .try_into()
            .map_err(|_| Error::InvalidArgument("exponent numerator too large".into()))?;
        let base = if q == 1 { self.clone() } else { self.root(q, cutoff, reg)? };
        let pos = base.pow(p, reg)?;
        if num_traits::Signed::is_negative(e.numer()) {
            pos.inv(cutoff, reg)
        } else {
            Ok(pos)
        }
    }

    pub fn display(&self, reg: &Registry) -> String {
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let c = if neg { t.coeff.neg() } else { t.coeff.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = c.to_string();
            let coeff = if coeff.contains(['/', '~', '^']) && !t.mono.is_one() {
                format!("({coeff})")
            } else {
                coeff
            };
            if t.mono.is_one() {
                out.push_str(&coeff);
            } else if c == RealAlg::one() {
                out.push_str(&reg.fmt_monomial(&t.mono));
            } else {
                out.push_str(&format!("{coeff}*{}", reg.fmt_monomial(&t.mono)));
            }
        }
        if let Some(c) = &self.cutoff {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            out.push_str(&format!("O({})", reg.fmt_monomial(c)));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}
