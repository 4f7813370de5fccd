//! Properties of truncation integer parts.

mod common;

use std::cmp::Ordering;

use num_bigint::BigInt;
use proptest::prelude::*;
use rcx_core::{ip_exp, ip_floor, ip_verify, IpElement, Monomial, Registry, Series};

use common::*;

fn reg() -> Registry {
    Registry::ladder(6).unwrap()
}

fn arb() -> impl Strategy<Value = Series> {
    arb_series(5, 5).prop_map(|t| exact(&reg(), t))
}

/// Purely infinite parts over the pure ladder y1..y4 with positive leading term.
fn arb_infinite() -> impl Strategy<Value = Series> {
    prop::collection::vec((arb_rational(), 1u32..5, 1i64..4, 1i64..3), 1..4).prop_map(|v| {
        let r = reg();
        let s = exact(&r, v.into_iter().map(|(c, g, n, d)| (rcx_core::RealAlg::from_rational(c), yp(g, n, d))).collect());
        if s.sign() == Ordering::Less { s.neg() } else { s }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn floor_verifies_and_is_unique(s in arb()) {
        let r = reg();
        let e = ip_floor(&s, &r).unwrap();
        prop_assert!(ip_verify(&e, &s, &r).unwrap());
        prop_assert!(e.infinite.is_purely_infinite(&r).unwrap());
        for dz in [-1i64, 1] {
            let other = IpElement::new(e.infinite.clone(), &e.z + BigInt::from(dz));
            prop_assert!(!ip_verify(&other, &s, &r).unwrap());
        }
    }

    #[test]
    fn boundary_tails(z in -20i64..20, tail in arb_series(5, 3), sign in prop::bool::ANY) {
        let r = reg();
        let tail = exact(&r, tail).truncate(&Monomial::one(), &r).unwrap();
        let tail = if sign { tail } else { tail.neg() };
        let s = Series::constant(q(z, 1)).add(&tail, &r).unwrap();
        let e = ip_floor(&s, &r).unwrap();
        let want = if tail.sign() == Ordering::Less { z - 1 } else { z };
        prop_assert_eq!(&e.z, &BigInt::from(want));
        prop_assert!(ip_verify(&e, &s, &r).unwrap());
    }

    #[test]
    fn discreteness(a in arb(), b in arb()) {
        let r = reg();
        let (ea, eb) = (ip_floor(&a, &r).unwrap(), ip_floor(&b, &r).unwrap());
        if ea != eb {
            let d = ea.to_series(&r).unwrap().sub(&eb.to_series(&r).unwrap(), &r).unwrap();
            let v = d.valuation().unwrap();
            let big = r.sign(&v).unwrap() == Ordering::Greater;
            let unit = v.is_one() && d.leading().unwrap().coeff.abs() >= rcx_core::RealAlg::one();
            prop_assert!(big || unit);
        }
    }

    #[test]
    fn exponential_closure(t in arb_infinite(), z in 0i64..6) {
        prop_assume!(!t.is_zero());
        let mut r = reg();
        let e = IpElement::new(t, BigInt::from(z));
        let x = ip_exp(&e, &mut r).unwrap();
        prop_assert!(!x.non_integral);
        prop_assert!(x.infinite.terms().iter().all(|t| r.sign(&t.mono).unwrap() == Ordering::Greater));
        prop_assert_eq!(x.z, BigInt::from(0));
        prop_assert_eq!(x.infinite.len(), 1);
        let lead = &x.infinite.leading().unwrap().coeff;
        prop_assert_eq!(lead, &rcx_core::RealAlg::pow2(&rcx_core::rat(z, 1)));
        prop_assert_eq!(r.log(&x.infinite.leading().unwrap().mono).unwrap(), e.infinite);
    }

    #[test]
    fn constant_exponentials(z in 1i64..40) {
        let mut r = reg();
        let x = ip_exp(&IpElement::new(Series::zero(), BigInt::from(z)), &mut r).unwrap();
        prop_assert_eq!(x, IpElement::new(Series::zero(), BigInt::from(2).pow(z as u32)));
    }
}
