//! Deterministic workloads shared by the benchmarks.

use rcx_core::{rat, GenId, Monomial, RealAlg, Registry, Series};

/// `y_i` as a monomial.
pub fn y(i: u32) -> Monomial {
    Monomial::gen(GenId(i))
}

/// `sqrt(n)` in the residue field.
pub fn sqrt(n: i64) -> RealAlg {
    RealAlg::from_int(n).root(2).expect("nonnegative")
}

/// A fixed exact series with `n` terms over the first `gens` ladder
/// generators, alternating rational and quadratic coefficients.
pub fn series(reg: &Registry, n: usize, gens: u32) -> Series {
    let coeffs = [RealAlg::one(), sqrt(2), RealAlg::from_rational(rat(-3, 2)), sqrt(3)];
    let terms = (0..n)
        .map(|k| {
            let k = k as i64;
            let mut m = Monomial::gen_pow(GenId(0), rat(2 - k, 2));
            for g in 1..gens {
                let e = (k * (g as i64 + 1)) % 5 - 2;
                m = m.mul(&Monomial::gen_pow(GenId(g), rat(e, 1)));
            }
            (coeffs[k as usize % coeffs.len()].clone(), m)
        })
        .collect();
    Series::from_terms(terms, None, reg).expect("exact series")
}

/// `y_from + ... + y_to`, exact.
pub fn ladder_sum(reg: &Registry, from: u32, to: u32) -> Series {
    let terms = (from..=to).map(|i| (RealAlg::one(), y(i))).collect();
    Series::from_terms(terms, None, reg).expect("exact series")
}
