//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so
//! the zero polynomial is the empty vector. Everything here is the plumbing
//! behind [`QScalar`](super::QScalar): exact division, content, and a
//! polynomial GCD (heuristic evaluation GCD with a primitive-remainder
//! fallback).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A polynomial in one variable with `BigInt` coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(k: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        ZPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Number of low-order zero coefficients (the t-adic valuation).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divide by `t^k`; the caller guarantees `k <= valuation()`.
    pub fn unshift(&self, k: usize) -> Self {
        debug_assert!(k <= self.valuation() || self.is_zero());
        ZPoly { coeffs: self.coeffs.iter().skip(k).cloned().collect() }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs }
    }

    pub fn neg(&self) -> Self {
        ZPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < other.coeffs.len() {
            coeffs.resize(other.coeffs.len(), BigInt::zero());
        }
        for (a, b) in coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Divide every coefficient by `c`, which must divide them all.
    pub fn div_scalar(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        ZPoly { coeffs: self.coeffs.iter().map(|a| a / c).collect() }
    }

    /// Positive gcd of the coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.lead().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        self.div_scalar(&c)
    }

    pub fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Exact quotient `self / d` over the integers, or `None` when `d` does
    /// not divide `self` in `Z[t]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.is_one() {
            return Some(self.clone());
        }
        if self.coeffs.len() < d.coeffs.len() {
            return None;
        }
        let dl = d.lead().unwrap();
        let dd = d.degree();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(dl);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    rem[k + j] -= &qk * c;
                }
            }
            quot[k] = qk;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quot))
    }

    /// Pseudo-remainder of `self` by `d`.
    fn pseudo_rem(&self, d: &Self) -> Self {
        let mut r = self.clone();
        let dd = d.degree();
        let dl = d.lead().unwrap().clone();
        while !r.is_zero() && r.degree() >= dd {
            let shift = r.degree() - dd;
            let rl = r.lead().unwrap().clone();
            r = r.scale(&dl).sub(&d.scale(&rl).shift(shift));
        }
        r
    }

    /// Greatest common divisor of the primitive parts, normalized to a
    /// primitive polynomial with positive leading coefficient.
    ///
    /// Integer contents are ignored: `gcd(2t + 2, 4)` is `1`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.primitive_part();
        }
        if b.is_zero() {
            return a.primitive_part();
        }
        if a.is_constant() || b.is_constant() {
            return Self::one();
        }
        let (a, b) = (a.primitive_part(), b.primitive_part());
        if a == b {
            return a;
        }
        // Common powers of t are pulled out first: they are the most
        // frequent shared factor and the heuristic step then sees smaller
        // inputs.
        let v = a.valuation().min(b.valuation());
        let (a0, b0) = (a.unshift(a.valuation()), b.unshift(b.valuation()));
        let core = if a0.is_constant() || b0.is_constant() {
            Self::one()
        } else {
            heuristic_gcd(&a0, &b0).unwrap_or_else(|| prs_gcd(&a0, &b0))
        };
        core.shift(v)
    }
}

/// Heuristic GCD by evaluation at a large integer and balanced base-`x`
/// interpolation. Both inputs are primitive and nonconstant.
///
/// The evaluation point always exceeds `2 * min(|a|, |b|) + 2`, in which
/// range a primitive interpolant that divides both inputs is their GCD.
fn heuristic_gcd(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let na = a.max_norm();
    let nb = b.max_norm();
    let mut x: BigInt = BigInt::from(2) * na.clone().min(nb.clone()) + 29;
    let la = a.lead().unwrap().abs();
    let lb = b.lead().unwrap().abs();
    let alt = BigInt::from(2) * (&na / &la).min(&nb / &lb) + 2;
    if alt > x {
        x = alt;
    }
    for _ in 0..6 {
        let va = a.eval_int(&x);
        let vb = b.eval_int(&x);
        if !va.is_zero() && !vb.is_zero() {
            let h = va.gcd(&vb);
            let cand = interpolate(&h, &x).primitive_part();
            if !cand.is_zero() && a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                return Some(cand);
            }
            // Try recovering the cofactor of `a` instead.
            let cofactor = interpolate(&(&va / &h), &x);
            if !cofactor.is_zero() {
                if let Some(g) = a.div_exact(&cofactor) {
                    let g = g.primitive_part();
                    if !g.is_zero() && b.div_exact(&g).is_some() {
                        return Some(g);
                    }
                }
            }
        }
        // Grow the evaluation point by roughly x^{1/4} * 2.73.
        let root = x.sqrt().sqrt();
        x = BigInt::from(73794) * &x * root / BigInt::from(27011);
    }
    None
}

/// Recover a polynomial from its value at `x` using balanced digits.
fn interpolate(h: &BigInt, x: &BigInt) -> ZPoly {
    let mut digits = Vec::new();
    let mut h = h.clone();
    let half = x / 2;
    while !h.is_zero() {
        let mut g = h.mod_floor(x);
        if g > half {
            g -= x;
        }
        h = (h - &g) / x;
        digits.push(g);
    }
    ZPoly::from_coeffs(digits)
}

/// Euclid with primitive pseudo-remainders.
fn prs_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let (mut a, mut b) = if a.degree() >= b.degree() {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    while !b.is_zero() {
        let r = a.pseudo_rem(&b).primitive_part();
        a = b;
        b = r;
    }
    a.primitive_part()
}

impl PartialOrd for ZPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ZPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

/// Sign helper used by the scalar canonicalizer.
pub(crate) fn lead_is_negative(p: &ZPoly) -> bool {
    p.lead().is_some_and(|l| l.sign() == Sign::Minus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> ZPoly {
        ZPoly::from_i64s(cs)
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.mul(&b), p(&[-1, 0, 1]));
        assert_eq!(a.add(&b), p(&[0, 2]));
        assert_eq!(a.sub(&a), ZPoly::zero());
        assert_eq!(p(&[0, 0, 3]).valuation(), 2);
    }

    #[test]
    fn exact_division() {
        let f = p(&[-1, 0, 0, 1]);
        assert_eq!(f.div_exact(&p(&[-1, 1])), Some(p(&[1, 1, 1])));
        assert_eq!(f.div_exact(&p(&[1, 1])), None);
        assert_eq!(p(&[2, 4]).div_exact(&p(&[2])), Some(p(&[1, 2])));
        assert_eq!(p(&[1, 4]).div_exact(&p(&[2])), None);
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        let phi2 = p(&[1, 1]);
        let phi3 = p(&[1, 1, 1]);
        let phi4 = p(&[1, 0, 1]);
        let a = phi2.mul(&phi3).mul(&phi3).scale(&BigInt::from(6));
        let b = phi3.mul(&phi4).shift(3).scale(&BigInt::from(-4));
        assert_eq!(ZPoly::gcd(&a, &b), phi3);
        assert_eq!(ZPoly::gcd(&phi2, &phi4), ZPoly::one());
    }

    #[test]
    fn fallback_agrees_with_heuristic() {
        let f = p(&[3, -7, 0, 2, 11]);
        let g = p(&[5, 1, -1]);
        let h = p(&[-2, 0, 9]);
        let a = f.mul(&h);
        let b = g.mul(&h);
        let expected = h.primitive_part();
        assert_eq!(heuristic_gcd(&a, &b).unwrap(), expected);
        assert_eq!(prs_gcd(&a, &b), expected);
    }

    #[test]
    fn interpolation_balanced_digits() {
        let f = p(&[-3, 2, -1, 5]);
        let x = BigInt::from(100);
        assert_eq!(interpolate(&f.eval_int(&x), &x), f);
    }
}
