//! The value group: a divisible ordered abelian group of monomials over a
//! growing set of generators. Each generator except the deepest ladder
//! element stores its logarithm as a purely infinite series, and the order
//! of monomials is derived from the order of their logarithms.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::residue::RealAlg;
use crate::series::Series;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenId(pub u32);

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

/// A finite product of rational powers of generators, sorted by id, with no
/// zero exponents. The empty product is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(GenId, BigRational)>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn gen(id: GenId) -> Self {
        Self(vec![(id, BigRational::one())])
    }

    pub fn gen_pow(id: GenId, e: BigRational) -> Self {
        Self::from_exponents(vec![(id, e)])
    }

    /// Builds a monomial from arbitrary (id, exponent) pairs, merging repeats.
    pub fn from_exponents(mut v: Vec<(GenId, BigRational)>) -> Self {
        v.sort_by_key(|(g, _)| *g);
        let mut out: Vec<(GenId, BigRational)> = Vec::with_capacity(v.len());
        for (g, e) in v {
            match out.last_mut() {
                Some((h, acc)) if *h == g => *acc += e,
                _ => out.push((g, e)),
            }
        }
        out.retain(|(_, e)| !e.is_zero());
        Self(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[(GenId, BigRational)] {
        &self.0
    }

    pub fn exponent(&self, id: GenId) -> BigRational {
        self.0
            .iter()
            .find(|(g, _)| *g == id)
            .map(|(_, e)| e.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let ord = match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let e = &self.0[i].1 + &other.0[j].1;
                    if !e.is_zero() {
                        out.push((self.0[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self(out)
    }

    pub fn pow(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::one();
        }
        Self(self.0.iter().map(|(g, e)| (*g, e * q)).collect())
    }

    pub fn inv(&self) -> Self {
        Self(self.0.iter().map(|(g, e)| (*g, -e)).collect())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenKind {
    Ladder { index: usize },
    Derived,
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub id: GenId,
    pub kind: GenKind,
    /// `None` only for the deepest ladder element.
    pub log: Option<Series>,
    pub stage: usize,
}

/// Append-only set of generators plus a cache of monomial signs. Creating
/// generators needs `&mut`; comparisons only read.
#[derive(Debug)]
pub struct Registry {
    gens: Vec<Generator>,
    depth: usize,
    signs: RwLock<HashMap<Monomial, Ordering>>,
}

impl Clone for Registry {
    fn clone(&self) -> Self {
        Self {
            gens: self.gens.clone(),
            depth: self.depth,
            signs: RwLock::new(self.signs.read().unwrap().clone()),
        }
    }
}

impl Registry {
    /// Ladder `y_0 > y_1 > ... > y_{depth-1}` with `log y_i = y_{i+1}`.
    pub fn ladder(depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidArgument("ladder depth must be positive".into()));
        }
        let gens = (0..depth)
            .map(|i| Generator {
                id: GenId(i as u32),
                kind: GenKind::Ladder { index: i },
                log: (i + 1 < depth).then(|| Series::monomial(Monomial::gen(GenId(i as u32 + 1)))),
                stage: 0,
            })
            .collect();
        Ok(Self {
            gens,
            depth,
            signs: RwLock::new(HashMap::new()),
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.gens[id.0 as usize]
    }

    pub fn stage_count(&self) -> usize {
        self.gens.iter().map(|g| g.stage + 1).max().unwrap_or(0)
    }

    /// The stage a fresh exponential of `r` enters: one above the latest
    /// stage among the generators `r` involves.
    pub fn natural_stage(&self, r: &Series) -> usize {
        r.terms()
            .iter()
            .flat_map(|t| t.mono.exponents().iter())
            .map(|(g, _)| self.generator(*g).stage + 1)
            .max()
            .unwrap_or(0)
    }

    /// The monomial `y_i`.
    pub fn y(&self, i: usize) -> Result<Monomial> {
        if i >= self.depth {
            return Err(Error::LadderTooShallow {
                needed: i + 1,
                have: self.depth,
            });
        }
        Ok(Monomial::gen(GenId(i as u32)))
    }

    fn deepest(&self) -> GenId {
        GenId(self.depth as u32 - 1)
    }

    /// `log m = sum q_i log g_i`.
    pub fn log(&self, m: &Monomial) -> Result<Series> {
        let mut acc = Series::zero();
        for (g, e) in m.exponents() {
            let log = self
                .generator(*g)
                .log
                .as_ref()
                .ok_or(Error::LogIncomplete(*g))?;
            acc = acc.add(&log.scale(&RealAlg::from_rational(e.clone())), self)?;
        }
        Ok(acc)
    }

    /// Sign of `m` against the identity.
    pub fn sign(&self, m: &Monomial) -> Result<Ordering> {
        if m.is_one() {
            return Ok(Ordering::Equal);
        }
        if let Some(s) = self.signs.read().unwrap().get(m) {
            return Ok(*s);
        }
        let s = self.compute_sign(m)?;
        self.signs.write().unwrap().insert(m.clone(), s);
        Ok(s)
    }

    fn compute_sign(&self, m: &Monomial) -> Result<Ordering> {
        let all_ladder = m
            .exponents()
            .iter()
            .all(|(g, _)| matches!(self.generator(*g).kind, GenKind::Ladder { .. }));
        if all_ladder {
            // smallest index dominates every power of the deeper ones
            let (_, e) = &m.exponents()[0];
            return Ok(e.cmp(&BigRational::zero()));
        }
        let deepest = self.deepest();
        let rest = Monomial(
            m.exponents()
                .iter()
                .filter(|(g, _)| *g != deepest)
                .cloned()
                .collect(),
        );
        let l = self.log(&rest)?;
        if !l.is_zero() {
            // log y_{depth-1} lies below every infinite monomial of the group
            return Ok(l.sign());
        }
        if l.cutoff().is_some() {
            return Err(Error::Undetermined);
        }
        Ok(m.exponent(deepest).cmp(&BigRational::zero()))
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a == b {
            return Ok(Ordering::Equal);
        }
        self.sign(&a.div(b))
    }

    pub fn max(&self, a: &Monomial, b: &Monomial) -> Result<Monomial> {
        Ok(if self.cmp(a, b)? == Ordering::Less {
            b.clone()
        } else {
            a.clone()
        })
    }

    /// Solves `r = log m` over the stored logarithms; `None` when no monomial
    /// of the current group has logarithm exactly `r` (terms and cutoff).
    pub fn find_log_match(&self, r: &Series) -> Result<Option<Monomial>> {
        if r.is_zero() && r.cutoff().is_none() {
            return Ok(Some(Monomial::one()));
        }
        let rc = r.cutoff();
        let mut same = Vec::new();
        let mut finer = Vec::new();
        for g in self.gens.iter().rev() {
            let Some(log) = &g.log else { continue };
            match (log.cutoff(), rc) {
                (None, _) => finer.push(g),
                (Some(_), None) => {}
                (Some(c), Some(d)) if c == d => same.push(g),
                (Some(c), Some(d)) => {
                    if self.cmp(c, d)? == Ordering::Less {
                        finer.push(g);
                    }
                }
            }
        }
        let cols: Vec<&Generator> = same.into_iter().chain(finer).collect();
        let mut rows: Vec<Monomial> = Vec::new();
        let mut index: HashMap<Monomial, usize> = HashMap::new();
        let mut add_row = |m: &Monomial, rows: &mut Vec<Monomial>| -> Result<()> {
            if index.contains_key(m) {
                return Ok(());
            }
            if let Some(c) = rc {
                if self.cmp(m, c)? != Ordering::Greater {
                    return Ok(());
                }
            }
            index.insert(m.clone(), rows.len());
            rows.push(m.clone());
            Ok(())
        };
        for t in r.terms() {
            add_row(&t.mono, &mut rows)?;
        }
        for g in &cols {
            for t in g.log.as_ref().unwrap().terms() {
                add_row(&t.mono, &mut rows)?;
            }
        }
        let row_of: HashMap<&Monomial, usize> =
            rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let n = cols.len();
        let mut mat = vec![vec![RealAlg::zero(); n + 1]; rows.len()];
        for (j, g) in cols.iter().enumerate() {
            for t in g.log.as_ref().unwrap().terms() {
                if let Some(&i) = row_of.get(&t.mono) {
                    mat[i][j] = t.coeff.clone();
                }
            }
        }
        for t in r.terms() {
            if let Some(&i) = row_of.get(&t.mono) {
                mat[i][n] = t.coeff.clone();
            }
        }
        let Some(x) = solve(mat, n)? else {
            return Ok(None);
        };
        let mut exps = Vec::new();
        for (j, v) in x.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let Some(q) = v.as_rational() else {
                return Ok(None);
            };
            exps.push((cols[j].id, q.clone()));
        }
        let m = Monomial::from_exponents(exps);
        let back = self.log(&m)?;
        Ok((back == *r).then_some(m))
    }

    /// The monomial `2^r`: an existing one when log-matching succeeds,
    /// otherwise a fresh derived generator.
    pub fn new_generator(&mut self, r: &Series, stage: usize) -> Result<Monomial> {
        for t in r.terms() {
            if self.sign(&t.mono)? != Ordering::Greater {
                return Err(Error::NotPurelyInfinite);
            }
        }
        if let Some(c) = r.cutoff() {
            if self.sign(c)? == Ordering::Less {
                return Err(Error::NotPurelyInfinite);
            }
        }
        if let Some(m) = self.find_log_match(r)? {
            return Ok(m);
        }
        let id = GenId(self.gens.len() as u32);
        self.gens.push(Generator {
            id,
            kind: GenKind::Derived,
            log: Some(r.clone()),
            stage,
        });
        Ok(Monomial::gen(id))
    }

    pub fn gen_name(&self, id: GenId) -> String {
        match self.generator(id).kind {
            GenKind::Ladder { index } => format!("y{index}"),
            GenKind::Derived => format!("g{}", id.0),
        }
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        m.exponents()
            .iter()
            .map(|(g, e)| {
                let name = self.gen_name(*g);
                if e.is_one() {
                    name
                } else if e.is_integer() && !e.is_negative() {
                    format!("{name}^{e}")
                } else {
                    format!("{name}^({e})")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Gauss-Jordan elimination on an augmented matrix with `n` unknowns; free
/// variables are set to zero. `None` when the system is inconsistent.
fn solve(mut mat: Vec<Vec<RealAlg>>, n: usize) -> Result<Option<Vec<RealAlg>>> {
    let rows = mat.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let lead = mat[r][c].clone();
        for v in mat[r].iter_mut().skip(c) {
            *v = v.div(&lead)?;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for k in c..=n {
                    let d = f.mul(&mat[r][k]);
                    mat[i][k] = mat[i][k].sub(&d);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if mat[r..].iter().any(|row| !row[n].is_zero()) {
        return Ok(None);
    }
    let mut x = vec![RealAlg::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = mat[i][n].clone();
    }
    Ok(Some(x))
}

/// `n` as a rational, for building exponents.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
