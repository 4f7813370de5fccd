//! Truncation integer parts: elements `t + z` with `t` purely infinite and
//! `z` an integer, and their closure under `2^x`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::monomial::Registry;
use crate::residue::RealAlg;
use crate::series::Series;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IpElement {
    /// Purely infinite part `t`.
    pub infinite: Series,
    pub z: BigInt,
    /// Set when the value is `2^z * m` with `z < 0`, a non-integer multiple.
    pub non_integral: bool,
}

impl IpElement {
    pub fn new(infinite: Series, z: BigInt) -> Self {
        Self {
            infinite,
            z,
            non_integral: false,
        }
    }

    /// `t + z` as a series.
    pub fn to_series(&self, reg: &Registry) -> Result<Series> {
        let z = Series::constant(RealAlg::from_rational(BigRational::from_integer(self.z.clone())));
        self.infinite.add(&z, reg)
    }
}

/// The integer part of `s`: `t + z <= s < t + z + 1`.
pub fn ip_floor(s: &Series, reg: &Registry) -> Result<IpElement> {
    if let Some(c) = s.cutoff() {
        if reg.sign(c)? != Ordering::Less {
            return Err(Error::UndeterminedTail);
        }
    }
    let split = s.split(reg)?;
    let mut z = split.constant.floor();
    let integral = split.constant == RealAlg::from_rational(BigRational::from_integer(z.clone()));
    if integral {
        match split.infinitesimal.sign() {
            Ordering::Less => z -= BigInt::one(),
            Ordering::Equal if !split.infinitesimal.is_exact() => {
                return Err(Error::UndeterminedTail)
            }
            _ => {}
        }
    }
    Ok(IpElement::new(split.infinite, z))
}

/// Whether `t + z <= s < t + z + 1`.
pub fn ip_verify(e: &IpElement, s: &Series, reg: &Registry) -> Result<bool> {
    let d = s.sub(&e.to_series(reg)?, reg)?;
    let below = d.sub(&Series::one(), reg)?;
    Ok(d.sign() != Ordering::Less && below.sign() == Ordering::Less)
}

/// `2^e` for a positive integer-part element: `2^z` when `t = 0`, otherwise
/// `2^z * 2^t` with `2^t` a monomial of the group.
pub fn ip_exp(e: &IpElement, reg: &mut Registry) -> Result<IpElement> {
    if e.to_series(reg)?.sign() != Ordering::Greater {
        return Err(Error::NonPositive);
    }
    let a = e
        .z
        .to_i64()
        .ok_or_else(|| Error::InvalidArgument("exponent too large".into()))?;
    let two_a = RealAlg::pow2(&BigRational::from_integer(e.z.clone()));
    if e.infinite.is_zero() {
        let n = two_a.as_rational().unwrap().to_integer();
        return Ok(IpElement::new(Series::zero(), n));
    }
    let stage = reg.natural_stage(&e.infinite);
    let g = reg.new_generator(&e.infinite, stage)?;
    Ok(IpElement {
        infinite: Series::term(two_a, g),
        z: BigInt::from(0),
        non_integral: a.is_negative(),
    })
}
