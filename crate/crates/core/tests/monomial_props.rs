//! Properties of the ordered monomial group.

mod common;

use std::cmp::Ordering;

use proptest::prelude::*;
use rcx_core::{Error, GenId, Monomial, RealAlg, Registry, Series};

use common::*;

const DEPTH: usize = 6;

/// A registry with two derived generators on top of the ladder.
fn registry() -> Registry {
    let mut reg = Registry::ladder(DEPTH).unwrap();
    let a = exact(&reg, vec![(q(1, 1), yp(1, 1, 2)), (q(1, 1), y(2))]);
    let b = exact(&reg, vec![(q(1, 1), yp(1, 1, 3)), (q(-1, 1), y(3))]);
    reg.new_generator(&a, 1).unwrap();
    reg.new_generator(&b, 1).unwrap();
    assert_eq!(reg.len(), DEPTH + 2);
    reg
}

/// Monomials over y0..y4 and the two derived generators.
fn arb_mono() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(
        (prop::sample::select(vec![0u32, 1, 2, 3, 4, 6, 7]), -3i64..=3, prop::sample::select(vec![1i64, 2])),
        0..4,
    )
    .prop_map(|v| Monomial::from_exponents(v.into_iter().map(|(g, n, d)| (GenId(g), rcx_core::rat(n, d))).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn total_order_on_samples(ms in prop::collection::vec(arb_mono(), 1..=8)) {
        let reg = registry();
        for a in &ms {
            prop_assert_eq!(reg.cmp(a, a).unwrap(), Ordering::Equal);
            for b in &ms {
                let ab = reg.cmp(a, b).unwrap();
                prop_assert_eq!(ab, reg.cmp(b, a).unwrap().reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                for c in &ms {
                    if ab != Ordering::Greater && reg.cmp(b, c).unwrap() != Ordering::Greater {
                        prop_assert_ne!(reg.cmp(a, c).unwrap(), Ordering::Greater);
                    }
                }
            }
        }
    }

    #[test]
    fn translation_invariance(a in arb_mono(), b in arb_mono(), c in arb_mono()) {
        let reg = registry();
        prop_assert_eq!(reg.cmp(&a, &b).unwrap(), reg.cmp(&a.mul(&c), &b.mul(&c)).unwrap());
    }

    #[test]
    fn log_preserves_order(a in arb_mono(), b in arb_mono()) {
        let reg = registry();
        let la = reg.log(&a).unwrap();
        let lb = reg.log(&b).unwrap();
        prop_assert_eq!(reg.cmp(&a, &b).unwrap(), la.sub(&lb, &reg).unwrap().sign());
        if la == lb {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn log_matching_is_injective(m in arb_mono()) {
        let mut reg = registry();
        let n = reg.len();
        let l = reg.log(&m).unwrap();
        if !l.is_zero() && l.split(&reg).unwrap().constant.is_zero() && l.is_purely_infinite(&reg).unwrap() {
            prop_assert_eq!(reg.new_generator(&l, 1).unwrap(), m);
            prop_assert_eq!(reg.len(), n);
        }
    }

    #[test]
    fn ladder_powers_stay_below(i in 0u32..(DEPTH as u32 - 1), n in 1i64..=10) {
        let reg = Registry::ladder(DEPTH).unwrap();
        prop_assert_eq!(reg.cmp(&yp(i + 1, n, 1), &y(i)).unwrap(), Ordering::Less);
    }
}

#[test]
fn fresh_generators_never_share_a_log() {
    let mut reg = Registry::ladder(DEPTH).unwrap();
    let logs = [
        cut(&reg, vec![(q(1, 1), y(1)), (q(1, 1), y(2))], y(4)),
        cut(&reg, vec![(q(1, 1), y(1)), (q(1, 1), y(2))], y(5)),
        cut(&reg, vec![(q(1, 1), y(1)), (q(2, 1), y(2))], y(4)),
        exact(&reg, vec![(sqrt(2), y(1))]),
    ];
    let mut ids = Vec::new();
    for l in &logs {
        ids.push(reg.new_generator(l, 1).unwrap());
        ids.push(reg.new_generator(l, 1).unwrap());
    }
    for (i, a) in ids.iter().enumerate() {
        for (j, b) in ids.iter().enumerate() {
            assert_eq!(a == b, i / 2 == j / 2);
        }
    }
    let stored: Vec<&Series> = reg.generators().iter().filter_map(|g| g.log.as_ref()).collect();
    for (i, a) in stored.iter().enumerate() {
        for b in &stored[i + 1..] {
            assert_ne!(a, b);
        }
    }
}

#[test]
fn deepest_generator_needs_a_log_only_when_decisive() {
    let reg = Registry::ladder(3).unwrap();
    assert_eq!(reg.cmp(&y(2), &Monomial::one()).unwrap(), Ordering::Greater);
    assert_eq!(reg.cmp(&y(1).mul(&yp(2, -5, 1)), &Monomial::one()).unwrap(), Ordering::Greater);
    assert!(matches!(reg.log(&y(2)), Err(Error::LogIncomplete(_))));
    let _ = RealAlg::one();
}
