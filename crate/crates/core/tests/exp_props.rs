//! Properties of the exponential and logarithm and of the group chain.

mod common;

use std::cmp::Ordering;

use proptest::prelude::*;
use rcx_core::{chain_run, exp_series, log_series, rat, GenId, Monomial, RealAlg, Registry, Series, Triple};

use common::*;

const DEPTH: usize = 7;

fn reg() -> Registry {
    Registry::ladder(DEPTH).unwrap()
}

/// An infinite ladder monomial: positive exponent on its smallest generator.
fn arb_big_mono() -> impl Strategy<Value = Monomial> {
    (0u32..5, 1i64..4, 1i64..3, prop::collection::vec((1u32..3, -3i64..4), 0..2)).prop_map(|(g, n, d, rest)| {
        let mut exps = vec![(GenId(g), rat(n, d))];
        exps.extend(rest.into_iter().map(|(o, e)| (GenId((g + o).min(DEPTH as u32 - 2)), rat(e, 1))));
        let m = Monomial::from_exponents(exps);
        if m.exponents().first().map(|(h, _)| *h) == Some(GenId(g)) { m } else { yp(g, n, d) }
    })
}

/// `s = t + q` with `t` purely infinite over y0..y5 and `q` rational.
fn arb_representable() -> impl Strategy<Value = Series> {
    (prop::collection::vec((arb_rational(), arb_big_mono()), 0..4), arb_rational()).prop_map(|(t, c)| {
        let r = reg();
        let mut terms: Vec<(RealAlg, Monomial)> = t.into_iter().map(|(c, m)| (RealAlg::from_rational(c), m)).collect();
        terms.push((RealAlg::from_rational(c), Monomial::one()));
        exact(&r, terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn log_inverts_exp(s in arb_representable()) {
        let mut r = reg();
        let e = exp_series(&s, &mut r).unwrap();
        prop_assert_eq!(e.len(), 1);
        prop_assert_eq!(log_series(&e, &r).unwrap(), s.clone());
        prop_assert_eq!(exp_series(&s, &mut r).unwrap(), e);
    }

    #[test]
    fn exp_inverts_log(m in arb_monomial(DEPTH as u32 - 1), a in -6i64..6, b in 1i64..4) {
        let mut r = reg();
        let n = r.len();
        let u = RealAlg::pow2(&rat(a, b));
        let x = Series::term(u, m);
        let l = log_series(&x, &r).unwrap();
        prop_assert_eq!(exp_series(&l, &mut r).unwrap(), x);
        prop_assert_eq!(r.len(), n);
    }

    #[test]
    fn exp_is_a_homomorphism(s in arb_representable(), t in arb_representable()) {
        let mut r = reg();
        let sum = s.add(&t, &r).unwrap();
        let lhs = exp_series(&sum, &mut r).unwrap();
        let es = exp_series(&s, &mut r).unwrap();
        let et = exp_series(&t, &mut r).unwrap();
        prop_assert_eq!(lhs, es.mul(&et, &r).unwrap());
    }

    #[test]
    fn exp_is_monotone(s in arb_representable(), t in arb_representable()) {
        let mut r = reg();
        let d = t.sub(&s, &r).unwrap().sign();
        let es = exp_series(&s, &mut r).unwrap();
        let et = exp_series(&t, &mut r).unwrap();
        prop_assert_eq!(et.sub(&es, &r).unwrap().sign(), d);
    }

    #[test]
    fn exp_outgrows_powers(s in arb_representable(), n in 1u32..=5) {
        let mut r = reg();
        let bound = Series::constant(RealAlg::from_int((n * n) as i64));
        prop_assume!(s.sub(&bound, &r).unwrap().sign() == Ordering::Greater);
        let e = exp_series(&s, &mut r).unwrap();
        let p = s.pow(n, &r).unwrap();
        prop_assert_eq!(e.sub(&p, &r).unwrap().sign(), Ordering::Greater);
    }
}

/// Agenda of purely infinite cutoff-marked sums over the ladder.
fn agenda(reg: &Registry) -> Vec<Series> {
    vec![
        cut(reg, vec![(q(1, 1), y(1)), (q(1, 1), y(2)), (q(1, 1), y(3))], y(4)),
        cut(reg, vec![(q(1, 1), y(2)), (q(1, 1), y(3))], y(4)),
        cut(reg, vec![(q(2, 1), yp(1, 1, 2)), (q(1, 1), y(3))], y(5)),
        ladder_sum(reg, 1, 2),
    ]
}

#[test]
fn chain_stages_are_monotone() {
    let reg = reg();
    let ag = agenda(&reg);
    let st = chain_run(reg.clone(), &Series::monomial(y(0)), 3, &ag, 8).unwrap();
    let r = &st.triple.registry;
    let mut seen = Triple::trivial(r.clone());
    for ev in &st.trace {
        for g in &ev.new_generators {
            assert_eq!(st.entered_at(*g), Some(ev.j));
            assert!(!seen.in_h(&Monomial::gen(*g)), "generator already in an earlier stage");
            if ev.j > 0 {
                assert_eq!(r.generator(*g).stage, ev.j);
            }
        }
        for g in &ev.new_generators {
            seen.add_to_h(Monomial::gen(*g));
        }
        assert!(ev.dyadic.passed());
    }
    // registries are nested: every stage-j generator's log lives in earlier generators
    for g in r.generators() {
        if let Some(log) = &g.log {
            for t in log.terms() {
                for (h, _) in t.mono.exponents() {
                    assert!(r.generator(*h).stage < g.stage || g.stage == 0);
                }
            }
        }
    }
    let fresh = &st.trace[1].new_generators;
    assert_eq!(fresh.len(), 3);
}
