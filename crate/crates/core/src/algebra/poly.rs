use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Monomial, Space};
use crate::error::{Error, Result};
use crate::scalar::QScalar;

/// An element of the coordinate algebra, stored in PBW normal form.
///
/// Terms are kept in a map ordered graded-lexicographically and no stored
/// coefficient is zero, so derived equality is equality in the algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    space: Space,
    terms: BTreeMap<Monomial, QScalar>,
}

/// Add `c * m` into an accumulator, dropping cancelled terms.
pub(crate) fn accumulate(acc: &mut BTreeMap<Monomial, QScalar>, m: Monomial, c: QScalar) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl Space {
    /// `x^ν · x_{b+1}` in normal form (`b` is 0-based).
    fn mul_gen(&self, nu: &Monomial, b: usize) -> super::space::Terms {
        let top = nu.exponents().iter().rposition(|&e| e > 0);
        let Some(top) = top.filter(|&t| t > b) else {
            let mut m = nu.clone();
            m.nu_mut()[b] += 1;
            return Arc::new(vec![(m, QScalar::one())]);
        };
        let key = (nu.clone(), b);
        if let Some(hit) = self.inner().mulgen.get(&key) {
            return hit.value().clone();
        }
        // x^ν x_b = x^{ν - ε_top} (x_top x_b), then rewrite the misordered pair.
        let mut pre = nu.clone();
        pre.nu_mut()[top] -= 1;
        let mut acc = BTreeMap::new();
        for (c, i, j) in &self.inner().swaps[top][b] {
            for (m1, c1) in self.mul_gen(&pre, *i).iter() {
                let c01 = c * c1;
                for (m2, c2) in self.mul_gen(m1, *j).iter() {
                    accumulate(&mut acc, m2.clone(), &c01 * c2);
                }
            }
        }
        let terms: super::space::Terms = Arc::new(acc.into_iter().collect());
        self.inner().mulgen.insert(key, terms.clone());
        terms
    }

    /// Product of two basis monomials in normal form.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> BTreeMap<Monomial, QScalar> {
        let mut cur = BTreeMap::new();
        let first_b = b.exponents().iter().position(|&e| e > 0);
        let last_a = a.exponents().iter().rposition(|&e| e > 0);
        match (last_a, first_b) {
            (_, None) => {
                cur.insert(a.clone(), QScalar::one());
                return cur;
            }
            (Some(la), Some(fb)) if la > fb => {}
            _ => {
                cur.insert(a.times(b), QScalar::one());
                return cur;
            }
        }
        cur.insert(a.clone(), QScalar::one());
        for (g, &e) in b.exponents().iter().enumerate() {
            for _ in 0..e {
                let mut next = BTreeMap::new();
                for (m, c) in &cur {
                    for (m2, c2) in self.mul_gen(m, g).iter() {
                        accumulate(&mut next, m2.clone(), c * c2);
                    }
                }
                cur = next;
            }
        }
        cur
    }
}

impl Poly {
    pub fn zero(space: &Space) -> Poly {
        Poly { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn one(space: &Space) -> Poly {
        Self::constant(space, QScalar::one())
    }

    pub fn constant(space: &Space, c: QScalar) -> Poly {
        Self::term(space, Monomial::one(space.dim()), c)
    }

    pub fn term(space: &Space, m: Monomial, c: QScalar) -> Poly {
        assert_eq!(m.dim(), space.dim(), "monomial length must equal N");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { space: space.clone(), terms }
    }

    pub fn monomial(space: &Space, m: Monomial) -> Poly {
        Self::term(space, m, QScalar::one())
    }

    /// The generator `x_j`, 1-based.
    pub fn generator(space: &Space, j: usize) -> Result<Poly> {
        space.check_index(j as i64)?;
        Ok(Self::monomial(space, Monomial::generator(space.dim(), j)))
    }

    /// Build from arbitrary terms, merging repeats and dropping zeros.
    pub fn from_terms(space: &Space, terms: impl IntoIterator<Item = (Monomial, QScalar)>) -> Poly {
        let mut acc = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.dim(), space.dim(), "monomial length must equal N");
            accumulate(&mut acc, m, c);
        }
        Poly { space: space.clone(), terms: acc }
    }

    pub(crate) fn from_map(space: &Space, terms: BTreeMap<Monomial, QScalar>) -> Poly {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Poly { space: space.clone(), terms }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &QScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> QScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The graded-lex largest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &QScalar)> {
        self.terms.iter().next_back()
    }

    /// The scalar value of a constant polynomial.
    pub fn as_scalar(&self) -> Option<QScalar> {
        match self.terms.len() {
            0 => Some(QScalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `Some(m)` when every term has degree `m`; zero counts as homogeneous
    /// of no particular degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Split by total degree; summing the parts gives back `self`.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, BTreeMap<Monomial, QScalar>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_default().insert(m.clone(), c.clone());
        }
        out.into_iter().map(|(d, t)| (d, Poly::from_map(&self.space, t))).collect()
    }

    pub fn scale(&self, c: &QScalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.space);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Poly { space: self.space.clone(), terms }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.space.same(&other.space)?;
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut terms = big.terms.clone();
        for (m, c) in &small.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(Poly { space: self.space.clone(), terms })
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.try_add(&-other)
    }

    /// The product in normal form.
    pub fn multiply(&self, other: &Poly) -> Result<Poly> {
        self.space.same(&other.space)?;
        let mut acc = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c12 = c1 * c2;
                for (m, c) in self.space.mul_monomials(m1, m2) {
                    accumulate(&mut acc, m, &c12 * &c);
                }
            }
        }
        Ok(Poly { space: self.space.clone(), terms: acc })
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one(&self.space);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// The star anti-automorphism, `x_i^* = q^{ρ_{i'}} x_{i'}`.
    ///
    /// Reversing the word `x_1^{ν_1} ... x_N^{ν_N}` and priming each letter
    /// gives `x_1^{ν_N} x_2^{ν_{N-1}} ...`, which is already normal, so no
    /// rewriting is needed.
    pub fn star(&self) -> Poly {
        let s = &self.space;
        let dim = s.dim();
        let terms = self.terms.iter().map(|(m, c)| {
            let e: i64 = (1..=dim).map(|i| m.exp(i) as i64 * s.rho2(s.prime(i))).sum();
            let rev: Vec<u32> = m.exponents().iter().rev().copied().collect();
            (Monomial::new(rev), c * QScalar::t_pow(e))
        });
        Poly::from_terms(s, terms)
    }

    /// Inject into the algebra of a larger space of the same parity by
    /// shifting indices, `x_j -> x_{j + (N_big - N)/2}`.
    pub fn embed(&self, target: &Space) -> Result<Poly> {
        let (small, big) = (self.space.dim(), target.dim());
        if big < small || (big - small) % 2 != 0 {
            return Err(Error::InvalidDimension { n: big, reason: "embedding needs a larger space of equal parity" });
        }
        let terms = self.terms.iter().map(|(m, c)| (m.embed(big), c.clone())).collect();
        Ok(Poly { space: target.clone(), terms })
    }

    /// Apply `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Monomial, &QScalar) -> QScalar) -> Poly {
        Poly::from_terms(&self.space, self.terms.iter().map(|(m, c)| (m.clone(), f(m, c))))
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            dim: self.space.dim(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson { nu: m.exponents().to_vec(), coeff: c.to_string() })
                .collect(),
        }
    }
}

/// Interchange form `{"N": .., "terms": [{"nu": [..], "coeff": ".."}]}`,
/// terms in decreasing graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    #[serde(rename = "N")]
    pub dim: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub nu: Vec<u32>,
    pub coeff: String,
}

/// The `Space` handle and each operand must agree; the operator forms panic
/// on a mismatch, the `try_`/`multiply` forms return an error.
impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("space mismatch in Poly addition")
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("space mismatch in Poly subtraction")
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.multiply(rhs).expect("space mismatch in Poly multiplication")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Poly { space: self.space.clone(), terms }
    }
}

macro_rules! owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly { (&self).$method(&rhs) }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly { (&self).$method(rhs) }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly { self.$method(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    /// Leading term first, e.g. `x1 x3 + (q^(1/2) - 1/q^(1/2)) x2^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let is_unit = m.degree() == 0;
            let neg_product = c.prints_as_product() && c.numerator().lead().is_some_and(|l| l.sign() == num_bigint::Sign::Minus);
            let shown = if neg_product { -c } else { c.clone() };
            match (idx == 0, neg_product) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            if is_unit {
                if shown.prints_as_product() {
                    write!(f, "{shown}")?;
                } else {
                    write!(f, "({shown})")?;
                }
            } else if shown.is_one() {
                write!(f, "{m}")?;
            } else if shown.prints_as_product() {
                write!(f, "{shown} {m}")?;
            } else {
                write!(f, "({shown}) {m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[N={}]({})", self.space.dim(), self)
    }
}
