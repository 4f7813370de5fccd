//! Development triples `(A, H, phi)` and the development algorithm.
//!
//! The ambient field is `k((G))` over the registry's group, so `phi` is the
//! identity on ambient elements. `H` is the divisible subgroup spanned by a
//! list of basis monomials, and `A` is generated over `k(H)` by named
//! ambient elements whose images are stored.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::monomial::{GenId, Monomial, Registry};
use crate::residue::RealAlg;
use crate::series::Series;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    /// `r_hat` before this step.
    pub approximant: Series,
    pub g: Monomial,
    pub a: RealAlg,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Development {
    pub prefix: Series,
    pub complete: bool,
    pub steps: Vec<Step>,
    /// First gap monomial outside `H`, if the run stopped on one.
    pub gap: Option<Monomial>,
}

impl Development {
    pub fn is_value_transcendental(&self) -> bool {
        self.gap.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendCase {
    Immediate,
    ValueTranscendental(Monomial),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The development lands inside `phi(A)`.
    Consistent,
    /// A gap outside `H`: the value group would have to grow.
    ValueGap(Monomial),
    /// The development escapes `phi(A)` with every gap in `H`.
    NonMaximal,
}

#[derive(Clone, Debug)]
pub struct AgendaEntry {
    pub element: Series,
    pub development: Development,
    pub verdict: Verdict,
    pub cutoff_exhausted: bool,
}

#[derive(Clone, Debug)]
pub struct MaximalityReport {
    pub entries: Vec<AgendaEntry>,
}

impl MaximalityReport {
    pub fn is_maximal(&self) -> bool {
        self.entries.iter().all(|e| e.verdict != Verdict::NonMaximal)
    }
}

#[derive(Clone, Debug)]
pub struct Triple {
    pub registry: Registry,
    h_basis: Vec<Monomial>,
    gens: Vec<(String, Series)>,
    images: Vec<Series>,
    agenda: Vec<Series>,
}

impl Triple {
    /// `(k, {1}, id)` over the given ambient group.
    pub fn trivial(registry: Registry) -> Self {
        Self {
            registry,
            h_basis: Vec::new(),
            gens: Vec::new(),
            images: Vec::new(),
            agenda: Vec::new(),
        }
    }

    /// `H` spanned by every generator of the registry.
    pub fn full(registry: Registry) -> Self {
        let h_basis = registry
            .generators()
            .iter()
            .map(|g| Monomial::gen(g.id))
            .collect();
        Self {
            h_basis,
            ..Self::trivial(registry)
        }
    }

    pub fn h_basis(&self) -> &[Monomial] {
        &self.h_basis
    }

    pub fn gens(&self) -> &[(String, Series)] {
        &self.gens
    }

    pub fn images(&self) -> &[Series] {
        &self.images
    }

    pub fn image(&self, name: &str) -> Option<&Series> {
        self.gens
            .iter()
            .position(|(n, _)| n == name)
            .map(|i| &self.images[i])
    }

    pub fn maximal_agenda(&self) -> &[Series] {
        &self.agenda
    }

    /// Adds `m` to the basis of `H` unless it is already in `H`.
    pub fn add_to_h(&mut self, m: Monomial) -> bool {
        if self.in_h(&m) {
            return false;
        }
        self.h_basis.push(m);
        true
    }

    /// Rank of `H` over the rationals.
    pub fn h_rank(&self) -> usize {
        let mut rank = 0;
        let mut basis: Vec<Monomial> = Vec::new();
        for m in &self.h_basis {
            if !in_span(&basis, m) {
                basis.push(m.clone());
                rank += 1;
            }
        }
        rank
    }

    pub fn in_h(&self, m: &Monomial) -> bool {
        in_span(&self.h_basis, m)
    }

    /// Every monomial of `s` lies in `H`.
    pub fn in_k_h(&self, s: &Series) -> bool {
        s.terms().iter().all(|t| self.in_h(&t.mono))
    }

    /// Membership in `phi(A)` as far as it is decidable here: finite
    /// `k[H]`-combinations, and stored images altered by such a combination
    /// with the same cutoff.
    pub fn in_phi_a(&self, s: &Series) -> Result<bool> {
        if s.is_exact() && self.in_k_h(s) {
            return Ok(true);
        }
        for img in &self.images {
            if img.cutoff() == s.cutoff() {
                let d = s.sub(img, &self.registry)?;
                if self.in_k_h(&d) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// The development of `r` of length at most `max_len`.
    pub fn develop(&self, r: &Series, max_len: usize) -> Result<Development> {
        let reg = &self.registry;
        let mut r_hat = Series::zero();
        let mut steps = Vec::new();
        loop {
            let d = r.sub(&r_hat, reg)?;
            if d.is_zero() {
                let dev = Development {
                    prefix: r_hat,
                    complete: d.is_exact(),
                    steps,
                    gap: None,
                };
                if dev.complete || dev.steps.len() == max_len {
                    return Ok(dev);
                }
                return Err(Error::CutoffExhausted(Box::new(dev)));
            }
            if steps.len() == max_len {
                return Ok(Development {
                    prefix: r_hat,
                    complete: false,
                    steps,
                    gap: None,
                });
            }
            let lead = d.leading().unwrap().clone();
            if !self.in_h(&lead.mono) {
                return Ok(Development {
                    prefix: r_hat,
                    complete: false,
                    steps,
                    gap: Some(lead.mono),
                });
            }
            let next = r_hat.add(&Series::term(lead.coeff.clone(), lead.mono.clone()), reg)?;
            steps.push(Step {
                approximant: r_hat,
                g: lead.mono,
                a: lead.coeff,
            });
            r_hat = next;
        }
    }

    /// Like [`Triple::develop`], but a cutoff-exhausted run returns its
    /// partial development and a flag instead of an error.
    pub fn develop_partial(&self, r: &Series, max_len: usize) -> Result<(Development, bool)> {
        match self.develop(r, max_len) {
            Ok(d) => Ok((d, false)),
            Err(Error::CutoffExhausted(d)) => Ok((*d, true)),
            Err(e) => Err(e),
        }
    }

    /// Extends the triple so that `r` lies in `A`.
    pub fn extend(&mut self, r: &Series, name: &str, max_len: usize) -> Result<ExtendCase> {
        if self.gens.iter().any(|(n, _)| n == name) {
            return Err(Error::AlreadyPresent(name.to_string()));
        }
        let (dev, _) = self.develop_partial(r, max_len)?;
        if dev.complete || self.in_phi_a(r)? {
            return Err(Error::AlreadyPresent(name.to_string()));
        }
        match &dev.gap {
            Some(_) => {
                // g = |r - t| must be a single monomial term
                let d = r.sub(&dev.prefix, &self.registry)?;
                if d.len() != 1 || !d.is_exact() {
                    return Err(Error::NonMonomialGap(d.display(&self.registry)));
                }
                let m = d.leading().unwrap().mono.clone();
                self.h_basis.push(m.clone());
                self.gens.push((name.to_string(), r.clone()));
                self.images.push(r.clone());
                Ok(ExtendCase::ValueTranscendental(m))
            }
            None => {
                self.gens.push((name.to_string(), r.clone()));
                self.images.push(r.clone());
                Ok(ExtendCase::Immediate)
            }
        }
    }

    /// Classifies each agenda element and records the agenda as certified.
    pub fn check_maximal(&mut self, agenda: &[Series], max_len: usize) -> Result<MaximalityReport> {
        let mut entries = Vec::with_capacity(agenda.len());
        for r in agenda {
            let (dev, exhausted) = self.develop_partial(r, max_len)?;
            let verdict = if dev.complete || self.in_phi_a(r)? {
                Verdict::Consistent
            } else if let Some(g) = &dev.gap {
                Verdict::ValueGap(g.clone())
            } else {
                Verdict::NonMaximal
            };
            entries.push(AgendaEntry {
                element: r.clone(),
                development: dev,
                verdict,
                cutoff_exhausted: exhausted,
            });
        }
        self.agenda.extend(agenda.iter().cloned());
        Ok(MaximalityReport { entries })
    }

    /// Order check between an element of the field and an image: sign of `x - r`.
    pub fn compare(&self, x: &Series, r: &Series) -> Result<Ordering> {
        Ok(x.sub(r, &self.registry)?.sign())
    }
}

/// Whether `m` lies in the rational span of `basis` (exponent vectors).
fn in_span(basis: &[Monomial], m: &Monomial) -> bool {
    if m.is_one() {
        return true;
    }
    let mut ids: Vec<GenId> = basis
        .iter()
        .chain(std::iter::once(m))
        .flat_map(|b| b.exponents().iter().map(|(g, _)| *g))
        .collect();
    ids.sort();
    ids.dedup();
    let n = basis.len();
    // rows: generators; columns: basis elements plus target
    let mut mat: Vec<Vec<BigRational>> = ids
        .iter()
        .map(|g| {
            basis
                .iter()
                .map(|b| b.exponent(*g))
                .chain(std::iter::once(m.exponent(*g)))
                .collect()
        })
        .collect();
    let rows = mat.len();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let lead = mat[r][c].clone();
        for v in mat[r].iter_mut() {
            *v /= &lead;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for k in 0..=n {
                    let d = &f * &mat[r][k];
                    mat[i][k] -= d;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    mat[r..].iter().all(|row| row[n].is_zero())
}
