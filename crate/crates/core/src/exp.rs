//! The exponential layer: `2^s` and `log s` on representable series, the
//! dyadic condition, the stage-by-stage group chain and the gadget
//! constants `c_{b,i}`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};

use crate::development::{Development, Triple, Verdict};
use crate::error::{Error, Result};
use crate::monomial::{GenId, GenKind, Monomial, Registry};
use crate::residue::RealAlg;
use crate::series::Series;

/// `2^s` for `s` with no infinitesimal part and a rational constant. A
/// cutoff at or above 1 is read as a purely infinite unknown tail.
pub fn exp_series(s: &Series, reg: &mut Registry) -> Result<Series> {
    let split = s.split(reg)?;
    if !split.infinitesimal.is_zero() {
        return Err(Error::InfinitesimalExponent);
    }
    if let Some(c) = s.cutoff() {
        if reg.sign(c)? == Ordering::Less {
            return Err(Error::InfinitesimalExponent);
        }
    }
    let q = split
        .constant
        .as_rational()
        .ok_or(Error::IrrationalConstantExponent)?
        .clone();
    let m = if split.infinite.is_zero() && split.infinite.is_exact() {
        Monomial::one()
    } else {
        let stage = reg.natural_stage(&split.infinite);
        reg.new_generator(&split.infinite, stage)?
    };
    Ok(Series::term(RealAlg::pow2(&q), m))
}

/// `log s` for `s = 2^q m`, recognized exactly.
pub fn log_series(s: &Series, reg: &Registry) -> Result<Series> {
    if s.len() != 1 || !s.is_exact() {
        return Err(Error::NotLogRepresentable);
    }
    let t = s.leading().unwrap();
    let q = t.coeff.log2_exact().ok_or(Error::NotLogRepresentable)?;
    let l = reg.log(&t.mono)?;
    l.add(&Series::constant(RealAlg::from_rational(q)), reg)
}

/// Whether `s` is a nonzero purely infinite element: every stored monomial
/// above 1 and no unknown tail below 1.
pub fn is_purely_infinite(s: &Series, reg: &Registry) -> Result<bool> {
    if s.is_zero() || !s.is_purely_infinite(reg)? {
        return Ok(false);
    }
    match s.cutoff() {
        None => Ok(true),
        Some(c) => Ok(reg.sign(c)? != Ordering::Less),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DyadicFailure {
    /// `h` is not in `H`.
    NotInH(Monomial),
    /// The log of generator `g` of a sample is not in `phi(A)`.
    LogOutsideA(GenId),
    /// The log of generator `g` is not purely infinite.
    LogNotPurelyInfinite(GenId),
    /// A purely infinite image whose exponential is not a monomial of `H`.
    ExpOutsideH(Series),
}

#[derive(Clone, Debug, Default)]
pub struct DyadicReport {
    pub samples_checked: usize,
    pub images_checked: usize,
    /// Samples involving the deepest ladder element, whose log is not stored.
    pub boundary: Vec<Monomial>,
    /// Purely infinite images whose exponential is due at the next stage.
    pub pending: Vec<Series>,
    pub failures: Vec<DyadicFailure>,
}

impl DyadicReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `phi(log H) = phi(A) ∩ k((H^{>1}))` on sample monomials of `H` and
/// on every stored purely infinite image.
pub fn dyadic_check(tri: &Triple, samples: &[Monomial]) -> Result<DyadicReport> {
    dyadic_check_split(tri, samples, tri.images(), &[])
}

fn dyadic_check_split(
    tri: &Triple,
    samples: &[Monomial],
    images: &[Series],
    pending: &[Series],
) -> Result<DyadicReport> {
    let reg = &tri.registry;
    let mut report = DyadicReport::default();
    let deepest = GenId(reg.depth() as u32 - 1);
    for h in samples {
        report.samples_checked += 1;
        if !tri.in_h(h) {
            report.failures.push(DyadicFailure::NotInH(h.clone()));
            continue;
        }
        for (g, _) in h.exponents() {
            if *g == deepest {
                report.boundary.push(h.clone());
                continue;
            }
            let log = reg.generator(*g).log.as_ref().unwrap();
            if !tri.in_phi_a(log)? {
                report.failures.push(DyadicFailure::LogOutsideA(*g));
            } else if !is_purely_infinite(log, reg)? {
                report.failures.push(DyadicFailure::LogNotPurelyInfinite(*g));
            }
        }
    }
    for img in images {
        if !is_purely_infinite(img, reg)? {
            continue;
        }
        report.images_checked += 1;
        match reg.find_log_match(img)? {
            Some(m) if tri.in_h(&m) => {}
            _ => report.failures.push(DyadicFailure::ExpOutsideH(img.clone())),
        }
    }
    for img in pending {
        if is_purely_infinite(img, reg)? {
            report.pending.push(img.clone());
        }
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct StageEvent {
    pub j: usize,
    /// Generators that entered `H` at this stage.
    pub new_generators: Vec<GenId>,
    pub developments: Vec<(Series, Development, Verdict)>,
    pub dyadic: DyadicReport,
}

#[derive(Clone, Debug)]
pub struct ChainState {
    pub stage: usize,
    pub triple: Triple,
    /// Stage at which each generator entered `H`.
    pub entered: HashMap<GenId, usize>,
    pub trace: Vec<StageEvent>,
}

impl ChainState {
    pub fn entered_at(&self, g: GenId) -> Option<usize> {
        self.entered.get(&g).copied()
    }
}

/// Brings `y` to the positive infinite normal form.
fn normalize(y: &Series, reg: &Registry, cutoff: &Monomial) -> Result<Series> {
    let mut y = match y.sign() {
        Ordering::Equal => return Err(Error::ZeroSeries),
        Ordering::Less => y.neg(),
        Ordering::Greater => y.clone(),
    };
    if reg.sign(&y.valuation()?)? == Ordering::Less {
        y = y.inv(cutoff, reg)?;
    }
    Ok(y)
}

/// Runs the group chain `H_0 ⊆ H_1 ⊆ ... ⊆ H_J` over a finite agenda.
///
/// `H_0` is spanned by the ladder of `reg`, which must be `log^i y` up to
/// powers: `v(y)` has to be a positive power of `y_0`. At each stage the
/// agenda (closed under logs of pending gap generators) is certified, and
/// before the next stage every purely infinite element of `B_j` on the
/// agenda is exponentiated into `H_{j+1}`.
pub fn chain_run(
    reg: Registry,
    y: &Series,
    stages: usize,
    agenda: &[Series],
    max_len: usize,
) -> Result<ChainState> {
    let cutoff = Monomial::gen(GenId(0)).pow(&crate::monomial::rat(-8, 1));
    let y = normalize(y, &reg, &cutoff)?;
    let v = y.valuation()?;
    let on_y0 = v.exponents().len() == 1 && v.exponents()[0].0 == GenId(0);
    if !on_y0 {
        return Err(Error::InvalidArgument(
            "the valuation of y must be a power of the ladder base".into(),
        ));
    }
    let mut tri = Triple::trivial(reg);
    let mut entered = HashMap::new();
    let ladder: Vec<Monomial> = tri
        .registry
        .generators()
        .iter()
        .filter(|g| matches!(g.kind, GenKind::Ladder { .. }))
        .map(|g| Monomial::gen(g.id))
        .collect();
    let mut first = Vec::new();
    for m in ladder {
        let id = m.exponents()[0].0;
        tri.add_to_h(m);
        entered.insert(id, 0);
        first.push(id);
    }
    let mut work: Vec<Series> = agenda.to_vec();
    let mut seen_logs: HashSet<GenId> = HashSet::new();
    let mut trace = Vec::new();
    let mut new_generators = first;
    let mut image_count = 0;
    for j in 0..=stages {
        // certify B_j against the working agenda
        let mut developments = Vec::new();
        let mut idx = 0;
        while idx < work.len() {
            let r = work[idx].clone();
            idx += 1;
            let (dev, _) = tri.develop_partial(&r, max_len)?;
            let verdict = if dev.complete || tri.in_phi_a(&r)? {
                Verdict::Consistent
            } else if let Some(g) = &dev.gap {
                Verdict::ValueGap(g.clone())
            } else {
                let name = format!("b{}", tri.gens().len());
                tri.extend(&r, &name, max_len)?;
                Verdict::NonMaximal
            };
            if let Verdict::ValueGap(g) = &verdict {
                for (id, _) in g.exponents() {
                    let gen = tri.registry.generator(*id);
                    if let (Some(log), true) = (&gen.log, seen_logs.insert(*id)) {
                        work.push(log.clone());
                    }
                }
            }
            developments.push((r, dev, verdict));
        }
        tri.check_maximal(&work, max_len)?;
        let images = tri.images().to_vec();
        let samples = tri.h_basis().to_vec();
        let (old, fresh) = images.split_at(image_count.min(images.len()));
        let dyadic = if j == stages {
            dyadic_check_split(&tri, &samples, old, fresh)?
        } else {
            dyadic_check_split(&tri, &samples, old, &[])?
        };
        trace.push(StageEvent {
            j,
            new_generators: std::mem::take(&mut new_generators),
            developments,
            dyadic,
        });
        if j == stages {
            break;
        }
        // H_{j+1}: exponentials of the purely infinite elements of B_j
        let mut candidates: Vec<Series> = images.clone();
        for r in &work {
            if tri.in_phi_a(r)? {
                candidates.push(r.clone());
            }
        }
        for r in candidates {
            if !is_purely_infinite(&r, &tri.registry)? {
                continue;
            }
            let m = tri.registry.new_generator(&r, j + 1)?;
            if tri.add_to_h(m.clone()) {
                for (id, _) in m.exponents() {
                    if !entered.contains_key(id) {
                        entered.insert(*id, j + 1);
                        new_generators.push(*id);
                    }
                }
            }
        }
        image_count = images.len();
    }
    Ok(ChainState {
        stage: stages,
        triple: tri,
        entered,
        trace,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetSpec {
    pub beta_max: usize,
    pub i_max: usize,
    pub ladder_depth: usize,
    /// Finite cofinal sequence `b_1 < b_2 < ...` of successor levels standing
    /// in for a limit level, one level per index `j = 1, 2, ...`.
    pub limit: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderCheck {
    pub left: String,
    pub right: String,
    /// `None` when the cutoffs hide the answer.
    pub actual: Option<Ordering>,
}

impl OrderCheck {
    pub fn holds(&self) -> bool {
        self.actual == Some(Ordering::Greater)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageCheck {
    pub beta: usize,
    pub i: usize,
    pub stage: usize,
    /// Not in the span of the generators of earlier stages.
    pub new_at_stage: bool,
}

#[derive(Clone, Debug)]
pub struct Gadget {
    pub registry: Registry,
    /// `(beta, i) -> c_{beta,i}`.
    pub constants: BTreeMap<(usize, usize), Series>,
    /// `i -> c_{limit,i}` when a limit level was requested.
    pub limit_constants: BTreeMap<usize, Series>,
    pub interleaving: Vec<OrderCheck>,
    pub stages: Vec<StageCheck>,
}

impl Gadget {
    pub fn passed(&self) -> bool {
        self.interleaving.iter().all(OrderCheck::holds)
            && self.stages.iter().all(|s| s.stage == s.beta && s.new_at_stage)
    }
}

/// Materializes `c_{b,i}` for `b <= beta_max` and checks the interleaving
/// `y_0 > c_{b,1} > y_1 > c_{b,2} > ...` over the indices the cutoffs decide.
pub fn gadget_build(spec: &GadgetSpec) -> Result<Gadget> {
    let needed = spec.i_max + spec.beta_max + 2;
    if spec.ladder_depth < needed {
        return Err(Error::LadderTooShallow {
            needed,
            have: spec.ladder_depth,
        });
    }
    if spec.i_max == 0 {
        return Err(Error::InvalidArgument("i_max must be positive".into()));
    }
    let mut reg = Registry::ladder(spec.ladder_depth)?;
    let mut constants = BTreeMap::new();
    let tail = reg.y(spec.i_max + 1)?;
    for i in 1..=spec.i_max {
        let mut terms = Vec::new();
        for j in i..=spec.i_max {
            terms.push((RealAlg::one(), reg.y(j)?));
        }
        constants.insert((0, i), Series::from_terms(terms, Some(tail.clone()), &reg)?);
    }
    for b in 0..spec.beta_max {
        for i in 1..spec.i_max.saturating_sub(b) {
            let arg = constants[&(b, i + 1)].clone();
            let c = exp_series(&arg, &mut reg)?;
            constants.insert((b + 1, i), c);
        }
    }
    let mut interleaving = Vec::new();
    let name = |b: usize, i: usize| format!("c[{b},{i}]");
    for b in 1..=spec.beta_max {
        for i in 1..spec.i_max.saturating_sub(b) {
            let c = constants[&(b, i)].valuation()?;
            let above = reg.y(i - 1)?;
            let below = reg.y(i)?;
            interleaving.push(OrderCheck {
                left: format!("y{}", i - 1),
                right: name(b, i),
                actual: reg.cmp(&above, &c).ok(),
            });
            interleaving.push(OrderCheck {
                left: name(b, i),
                right: format!("y{i}"),
                actual: reg.cmp(&c, &below).ok(),
            });
        }
    }
    let mut stages = Vec::new();
    for (&(b, i), c) in &constants {
        if b == 0 {
            continue;
        }
        let m = c.valuation()?;
        let stage = m
            .exponents()
            .iter()
            .map(|(g, _)| reg.generator(*g).stage)
            .max()
            .unwrap_or(0);
        let earlier: Vec<Monomial> = reg
            .generators()
            .iter()
            .filter(|g| g.stage < b)
            .map(|g| Monomial::gen(g.id))
            .collect();
        let mut probe = Triple::trivial(Registry::ladder(1)?);
        for e in earlier {
            probe.add_to_h(e);
        }
        stages.push(StageCheck {
            beta: b,
            i,
            stage,
            new_at_stage: !probe.in_h(&m),
        });
    }
    let mut limit_constants = BTreeMap::new();
    if let Some(levels) = &spec.limit {
        for i in 1..=levels.len() {
            let mut acc = Series::zero();
            for (j, &lvl) in levels.iter().enumerate().skip(i - 1) {
                let Some(c) = constants.get(&(lvl, j + 1)) else {
                    return Err(Error::InvalidArgument(format!(
                        "limit level {lvl} has no constant at index {}",
                        j + 1
                    )));
                };
                acc = acc.add(c, &reg)?;
            }
            limit_constants.insert(i, acc);
        }
    }
    Ok(Gadget {
        registry: reg,
        constants,
        limit_constants,
        interleaving,
        stages,
    })
}
