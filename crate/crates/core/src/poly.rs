//! Dense univariate polynomials over the rationals, little-endian
//! coefficient vectors. Just enough machinery for Sturm sequences and
//! root isolation of minimal polynomials.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type QPoly = Vec<BigRational>;
pub type ZPoly = Vec<BigInt>;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn from_int(p: &[BigInt]) -> QPoly {
    p.iter().cloned().map(BigRational::from_integer).collect()
}

pub fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

pub fn eval_int(p: &[BigInt], x: &BigRational) -> BigRational {
    // Horner on the homogenized form: sum c_i n^i d^(deg-i), divided by d^deg.
    let (n, d) = (x.numer(), x.denom());
    let deg = p.len().saturating_sub(1);
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    for c in p.iter().rev() {
        acc = acc * n + c * &dpow;
        dpow *= d;
    }
    BigRational::new(acc, num_traits::pow(d.clone(), deg))
}

pub fn sign_at_int(p: &[BigInt], x: &BigRational) -> Ordering {
    let (n, d) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    for c in p.iter().rev() {
        acc = acc * n + c * &dpow;
        dpow *= d;
    }
    acc.sign_cmp()
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

pub fn sign_at(p: &[BigRational], x: &BigRational) -> Ordering {
    eval(p, x).cmp(&BigRational::zero())
}

pub fn derivative(p: &[BigRational]) -> QPoly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * q(i as i64))
        .collect()
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Euclidean division; `b` must be nonzero.
pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let db = degree(b).expect("division by the zero polynomial");
    let mut r: QPoly = a.to_vec();
    trim(&mut r);
    let lead = b[db].clone();
    let mut quot = vec![BigRational::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            let t = &c * bc;
            r[i + shift] -= t;
        }
        quot[shift] = c;
        trim(&mut r);
    }
    trim(&mut quot);
    (quot, r)
}

pub fn monic(p: &[BigRational]) -> QPoly {
    match degree(p) {
        None => Vec::new(),
        Some(d) => {
            let lead = p[d].clone();
            p[..=d].iter().map(|c| c / &lead).collect()
        }
    }
}

pub fn gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

pub fn squarefree(p: &[BigRational]) -> QPoly {
    let d = derivative(p);
    if degree(&d).is_none() {
        return monic(p);
    }
    let g = gcd(p, &d);
    monic(&divrem(p, &g).0)
}

/// Scale to a primitive integer polynomial with positive leading coefficient.
pub fn primitive(p: &[BigRational]) -> ZPoly {
    let mut p = p.to_vec();
    trim(&mut p);
    if p.is_empty() {
        return Vec::new();
    }
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut z: ZPoly = p
        .iter()
        .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let g = z.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    for c in z.iter_mut() {
        *c = &*c / &g;
    }
    if z.last().is_some_and(Signed::is_negative) {
        for c in z.iter_mut() {
            *c = -&*c;
        }
    }
    z
}

pub fn sturm_sequence(p: &[BigRational]) -> Vec<QPoly> {
    let mut seq = vec![p.to_vec(), derivative(p)];
    trim(&mut seq[0]);
    trim(&mut seq[1]);
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let (_, r) = divrem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq
}

fn variations(seq: &[QPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = Ordering::Equal;
    for p in seq {
        let s = sign_at(p, x);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots in the half-open interval `(lo, hi]`.
pub fn count_roots(seq: &[QPoly], lo: &BigRational, hi: &BigRational) -> usize {
    variations(seq, lo).saturating_sub(variations(seq, hi))
}

/// Cauchy bound: every real root lies in `(-bound, bound)`.
pub fn root_bound(p: &[BigRational]) -> BigRational {
    let d = degree(p).unwrap_or(0);
    let lead = p[d].abs();
    let m = p[..d]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(BigRational::zero);
    m + BigRational::one() + BigRational::one()
}

/// Isolates every real root of a squarefree polynomial. Returned intervals
/// are disjoint, sorted, and either degenerate (`lo == hi`, an exact rational
/// root) or open intervals containing exactly one root with no root at
/// either endpoint.
pub fn isolate_roots(p: &[BigRational]) -> Vec<(BigRational, BigRational)> {
    if degree(p).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let seq = sturm_sequence(p);
    let b = root_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = count_roots(&seq, &lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 && !sign_at(p, &hi).is_eq() {
            out.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / q(2);
        if sign_at(p, &mid).is_eq() {
            out.push((mid.clone(), mid.clone()));
            // Shrink away from the exact root so that neighbours stay isolated.
            let mut eps = (&hi - &lo) / q(4);
            loop {
                let a = &mid - &eps;
                let c = &mid + &eps;
                if count_roots(&seq, &a, &c) == 1 && !sign_at(p, &a).is_eq() && !sign_at(p, &c).is_eq()
                {
                    stack.push((lo.clone(), a));
                    stack.push((c, hi.clone()));
                    break;
                }
                eps /= q(2);
            }
        } else {
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}
