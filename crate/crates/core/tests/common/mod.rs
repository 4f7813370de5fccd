//! Shared builders and generators for the integration tests.
#![allow(dead_code)]

use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;

use rcx_core::{rat, GenId, Monomial, RealAlg, Registry, Series};

pub fn y(i: u32) -> Monomial {
    Monomial::gen(GenId(i))
}

pub fn yp(i: u32, n: i64, d: i64) -> Monomial {
    Monomial::gen_pow(GenId(i), rat(n, d))
}

pub fn q(n: i64, d: i64) -> RealAlg {
    RealAlg::from_rational(rat(n, d))
}

pub fn sqrt(n: i64) -> RealAlg {
    RealAlg::from_int(n).root(2).unwrap()
}

pub fn exact(reg: &Registry, terms: Vec<(RealAlg, Monomial)>) -> Series {
    Series::from_terms(terms, None, reg).unwrap()
}

pub fn cut(reg: &Registry, terms: Vec<(RealAlg, Monomial)>, c: Monomial) -> Series {
    Series::from_terms(terms, Some(c), reg).unwrap()
}

/// `y_from + ... + y_to`, exact.
pub fn ladder_sum(reg: &Registry, from: u32, to: u32) -> Series {
    exact(reg, (from..=to).map(|i| (RealAlg::one(), y(i))).collect())
}

/// Coefficients drawn from rationals and combinations of `√2` and `√3`.
pub fn coeff_pool() -> Vec<RealAlg> {
    let (r2, r3) = (sqrt(2), sqrt(3));
    let mut pool: Vec<RealAlg> = [(1, 1), (-1, 1), (2, 1), (-3, 1), (1, 2), (-5, 3), (7, 4), (3, 1)]
        .iter()
        .map(|&(n, d)| q(n, d))
        .collect();
    pool.push(r2.clone());
    pool.push(r3.neg());
    pool.push(r2.add(&q(1, 1)));
    pool.push(r2.add(&r3));
    pool.push(r3.sub(&r2).mul(&q(1, 2)));
    pool.push(r2.mul(&r3));
    pool
}

/// A random monomial over the first `gens` ladder generators.
pub fn random_monomial(rng: &mut impl Rng, gens: u32) -> Monomial {
    let mut exps = Vec::new();
    for g in 0..gens {
        if rng.gen_bool(0.4) {
            let n = rng.gen_range(-4i64..=4);
            let d = [1i64, 1, 2, 3][rng.gen_range(0..4)];
            if n != 0 {
                exps.push((GenId(g), rat(n, d)));
            }
        }
    }
    Monomial::from_exponents(exps)
}

/// A random exact series with up to `max_terms` terms.
pub fn random_series(rng: &mut impl Rng, reg: &Registry, pool: &[RealAlg], gens: u32, max_terms: usize) -> Series {
    let n = rng.gen_range(0..=max_terms);
    let terms = (0..n)
        .map(|_| (pool[rng.gen_range(0..pool.len())].clone(), random_monomial(rng, gens)))
        .collect();
    exact(reg, terms)
}

pub fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-60i64..60, 1i64..12).prop_map(|(n, d)| rat(n, d))
}

pub fn arb_coeff() -> impl Strategy<Value = RealAlg> {
    let pool = coeff_pool();
    prop_oneof![
        3 => arb_rational().prop_map(RealAlg::from_rational),
        1 => (0..pool.len()).prop_map(move |i| pool[i].clone()),
    ]
}

pub fn arb_monomial(gens: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec((0..gens, -4i64..=4, prop::sample::select(vec![1i64, 1, 2, 3])), 0..3)
        .prop_map(|v| Monomial::from_exponents(v.into_iter().map(|(g, n, d)| (GenId(g), rat(n, d))).collect()))
}

/// Exact series over the first `gens` generators of a ladder.
pub fn arb_series(gens: u32, max_terms: usize) -> impl Strategy<Value = Vec<(RealAlg, Monomial)>> {
    prop::collection::vec((arb_coeff(), arb_monomial(gens)), 0..=max_terms)
}

/// Fixed-point reals with 64 decimal digits, an oracle independent of the
/// residue field's interval machinery. Each operation truncates, so results
/// carry an error of a few units in the last digit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fx(pub num_bigint::BigInt);

pub const FX_DIGITS: u32 = 64;

impl Fx {
    pub fn scale() -> num_bigint::BigInt {
        num_bigint::BigInt::from(10).pow(FX_DIGITS)
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Fx(q.numer() * Self::scale() / q.denom())
    }

    pub fn add(&self, o: &Self) -> Self {
        Fx(&self.0 + &o.0)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Fx(&self.0 - &o.0)
    }

    pub fn neg(&self) -> Self {
        Fx(-&self.0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Fx(&self.0 * &o.0 / Self::scale())
    }

    pub fn div(&self, o: &Self) -> Self {
        Fx(&self.0 * Self::scale() / &o.0)
    }

    /// Real `n`-th root; negative inputs only for odd `n`.
    pub fn root(&self, n: u32) -> Self {
        let neg = self.0.sign() == num_bigint::Sign::Minus;
        let mag = if neg { -&self.0 } else { self.0.clone() };
        let r = (mag * Self::scale().pow(n - 1)).nth_root(n);
        Fx(if neg { -r } else { r })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Fx(Self::scale());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `2^(a/b)`.
    pub fn pow2(e: &BigRational) -> Self {
        let a: i64 = num_traits::ToPrimitive::to_i64(e.numer()).unwrap();
        let b: u32 = num_traits::ToPrimitive::to_u32(e.denom()).unwrap();
        let two_a = if a >= 0 {
            Fx(Self::scale() * num_bigint::BigInt::from(2).pow(a as u32))
        } else {
            Fx(Self::scale() / num_bigint::BigInt::from(2).pow((-a) as u32))
        };
        two_a.root(b)
    }

    /// Whether `[lo, hi]` contains this value up to `slack` units of 10^-64.
    pub fn within(&self, lo: &BigRational, hi: &BigRational, slack: i64) -> bool {
        let lo = Fx::from_rational(lo).0 - slack;
        let hi = Fx::from_rational(hi).0 + slack;
        lo <= self.0 && self.0 <= hi
    }
}

/// Random residue-field values paired with their oracle values.
pub fn random_algebraic(rng: &mut impl Rng, depth: u32) -> (RealAlg, Fx) {
    if depth == 0 || rng.gen_bool(0.3) {
        let n = rng.gen_range(-30i64..=30);
        let d = rng.gen_range(1i64..=9);
        return match rng.gen_range(0..5) {
            0 | 1 => (q(n, d), Fx::from_rational(&rat(n, d))),
            2 => {
                let k = [2i64, 3, 5, 6][rng.gen_range(0..4)];
                (sqrt(k), Fx::from_rational(&rat(k, 1)).root(2))
            }
            3 => (RealAlg::pow2(&rat(n.rem_euclid(7) - 3, 3)), Fx::pow2(&rat(n.rem_euclid(7) - 3, 3))),
            _ => {
                let r = q(n, d).root(3).unwrap();
                (r, Fx::from_rational(&rat(n, d)).root(3))
            }
        };
    }
    let (a, fa) = random_algebraic(rng, depth - 1);
    match rng.gen_range(0..4) {
        0 => {
            let (b, fb) = random_algebraic(rng, 0);
            (a.add(&b), fa.add(&fb))
        }
        1 => {
            let (b, fb) = random_algebraic(rng, 0);
            (a.mul(&b), fa.mul(&fb))
        }
        2 => {
            let (b, fb) = random_algebraic(rng, 0);
            if b.is_zero() {
                (a, fa)
            } else {
                (a.div(&b).unwrap(), fa.div(&fb))
            }
        }
        _ => (a.neg(), fa.neg()),
    }
}

