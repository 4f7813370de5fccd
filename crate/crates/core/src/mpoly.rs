//! Sparse multivariate polynomials over the rationals and variable
//! elimination by norms: `Res_t(m, P) ~ det P(C_m)` with `C_m` the companion
//! matrix of `m`, evaluated by the division-free Berkowitz algorithm.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::{self, QPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let entry = out.terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let entry = out.terms.entry(e).or_insert_with(BigRational::zero);
                *entry += c1 * c2;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Splits into coefficients of successive powers of `var`.
    fn coefficients_in(&self, var: usize) -> Vec<MPoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    /// Eliminates `var` against the algebraic relation `minpoly(var) = 0`,
    /// returning the norm `prod_{minpoly(r)=0} P|_{var=r}`.
    pub fn eliminate(&self, var: usize, minpoly: &[BigRational]) -> Self {
        let m = poly::monic(minpoly);
        let d = m.len() - 1;
        // Companion matrix: C e_j = e_{j+1}, last column = -m_0..-m_{d-1}.
        let mut comp = vec![vec![BigRational::zero(); d]; d];
        for j in 0..d {
            if j + 1 < d {
                comp[j + 1][j] = BigRational::one();
            }
            comp[j][d - 1] = -m[j].clone();
        }
        let coeffs = self.coefficients_in(var);
        // Sum_k P_k * C^k
        let mut power = identity(d);
        let mut mat = vec![vec![Self::zero(self.nvars); d]; d];
        for (k, pk) in coeffs.iter().enumerate() {
            if k > 0 {
                power = mat_mul(&power, &comp);
            }
            if pk.is_zero() {
                continue;
            }
            for r in 0..d {
                for c in 0..d {
                    if !power[r][c].is_zero() {
                        mat[r][c] = mat[r][c].add(&pk.scale(&power[r][c]));
                    }
                }
            }
        }
        berkowitz_det(&mat, self.nvars)
    }

    /// Interprets a polynomial involving only variable `var` as univariate.
    pub fn to_univariate(&self, var: usize) -> QPoly {
        let d = self.degree_in(var) as usize;
        let mut out = vec![BigRational::zero(); d + 1];
        for (e, c) in &self.terms {
            debug_assert!(e.iter().enumerate().all(|(i, &x)| i == var || x == 0));
            out[e[var] as usize] += c;
        }
        poly::trim(&mut out);
        out
    }
}

fn identity(d: usize) -> Vec<Vec<BigRational>> {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// Determinant over a commutative ring without division.
fn berkowitz_det(a: &[Vec<MPoly>], nvars: usize) -> MPoly {
    let n = a.len();
    if n == 0 {
        return MPoly::constant(nvars, BigRational::one());
    }
    // Characteristic polynomial coefficients (highest degree first) of the
    // trailing principal submatrix, grown one row/column at a time.
    let one = MPoly::constant(nvars, BigRational::one());
    let mut charp = vec![one.clone(), a[n - 1][n - 1].neg()];
    for k in (0..n - 1).rev() {
        // Submatrix indices k+1..n is `sub`, size s.
        let s = n - 1 - k;
        let row: Vec<&MPoly> = (k + 1..n).map(|j| &a[k][j]).collect();
        let col: Vec<MPoly> = (k + 1..n).map(|i| a[i][k].clone()).collect();
        // Toeplitz first column: 1, -a_kk, -R C, -R A C, ..., -R A^{s-1} C
        let mut toe = Vec::with_capacity(s + 2);
        toe.push(one.clone());
        toe.push(a[k][k].neg());
        let mut v = col;
        for step in 0..s {
            let dot = row
                .iter()
                .zip(&v)
                .fold(MPoly::zero(nvars), |acc, (r, c)| acc.add(&r.mul(c)));
            toe.push(dot.neg());
            if step + 1 < s {
                v = (0..s)
                    .map(|i| {
                        (0..s).fold(MPoly::zero(nvars), |acc, j| {
                            acc.add(&a[k + 1 + i][k + 1 + j].mul(&v[j]))
                        })
                    })
                    .collect();
            }
        }
        // new charp = T * charp, T is (s+2) x (s+1) lower triangular Toeplitz
        let mut next = vec![MPoly::zero(nvars); s + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, cj) in charp.iter().enumerate() {
                if i >= j {
                    *slot = slot.add(&toe[i - j].mul(cj));
                }
            }
        }
        charp = next;
    }
    let c0 = charp.pop().unwrap();
    if n % 2 == 0 {
        c0
    } else {
        c0.neg()
    }
}
