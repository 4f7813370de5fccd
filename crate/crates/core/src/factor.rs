//! Irreducible factorization over the integers, delegated to `algebraics`.

use algebraics::polynomial::Polynomial;
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::poly::{self, ZPoly};

/// Distinct irreducible factors (primitive, positive leading coefficient) of
/// a nonconstant rational polynomial.
pub fn irreducible_factors(p: &[BigRational]) -> Vec<ZPoly> {
    let sf = poly::primitive(&poly::squarefree(p));
    if sf.len() <= 2 {
        return vec![sf];
    }
    let input: Polynomial<BigInt> = sf.into_iter().collect();
    input
        .factor()
        .polynomial_factors
        .into_iter()
        .map(|f| {
            let coeffs: Vec<BigRational> = f
                .polynomial
                .iter()
                .map(BigRational::from_integer)
                .collect();
            poly::primitive(&coeffs)
        })
        .filter(|f| f.len() >= 2)
        .collect()
}
