//! The invariant functional on the quantum sphere and the scalar product
//! `<p_1, p_2> = h((τ p_1)^* (τ p_2))`.
//!
//! The functional is evaluated on `A` directly: it vanishes off the
//! diagonal support and is given by a product formula on it. Dividing out
//! `Q - 1` is never needed, because `h(Q a) = h(a)` (checked in the test
//! suites).

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{Monomial, Poly, Space};
use crate::error::Result;
use crate::scalar::{qpochhammer, QScalar};

/// Membership in the support of `h`: `ν_i = ν_{i'}` for `i <= n` and, for
/// odd `N`, `ν_{n+1}` even.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagonalSupport {
    pub dim: usize,
}

impl DiagonalSupport {
    pub fn new(dim: usize) -> Self {
        DiagonalSupport { dim }
    }

    pub fn contains(&self, nu: &[u32]) -> bool {
        let n = self.dim / 2;
        (0..n).all(|i| nu[i] == nu[self.dim - 1 - i]) && (self.dim % 2 == 0 || nu[n] % 2 == 0)
    }

    /// Whether some monomial in the normal form of `x^a x^b` can lie in the
    /// support. Weights add and the parity of the middle exponent is kept
    /// by every rewriting rule, so this test is exact for "no".
    pub fn product_may_meet(&self, a: &[u32], b: &[u32]) -> bool {
        let n = self.dim / 2;
        let balanced = (0..n).all(|i| {
            let j = self.dim - 1 - i;
            a[i] as i64 + b[i] as i64 == a[j] as i64 + b[j] as i64
        });
        balanced && (self.dim % 2 == 0 || (a[n] + b[n]) % 2 == 0)
    }
}

/// `h` on one basis monomial.
pub fn h_monomial(space: &Space, m: &Monomial) -> QScalar {
    let dim = space.dim();
    let nu = m.exponents();
    if !DiagonalSupport::new(dim).contains(nu) {
        return QScalar::zero();
    }
    let n = space.half();
    let mm = if space.is_odd() { nu[n] / 2 } else { 0 };
    let s: u32 = nu[..n].iter().sum();
    let qm2 = QScalar::q_pow(-2);
    let mut num = QScalar::one();
    for &v in &nu[..n] {
        num = num * qpochhammer(&qm2, &qm2, v);
    }
    num = num * qpochhammer(&QScalar::q_pow(-1), &qm2, mm) * (QScalar::one() + QScalar::q()).pow(mm);
    let rho: i64 = (0..n).map(|i| space.rho2(i + 1) * nu[i] as i64).sum();
    let den = QScalar::t_pow(rho + 2 * mm as i64)
        * (QScalar::one() + QScalar::q_pow(dim as i64 - 2)).pow(s + mm)
        * qpochhammer(&QScalar::q_pow(-(dim as i64)), &qm2, s + mm);
    num / den
}

/// The functional `h`, extended linearly.
pub fn h_functional(p: &Poly) -> QScalar {
    p.terms().map(|(m, c)| c * &h_monomial(p.space(), m)).sum()
}

/// `<p_1, p_2> = h(p_1^* p_2)`.
pub fn inner(p1: &Poly, p2: &Poly) -> Result<QScalar> {
    p1.space().same(p2.space())?;
    Ok(inner_starred(&p1.star(), p2))
}

/// `h(a · b)` summed only over term pairs whose product can reach the
/// diagonal support.
fn inner_starred(a: &Poly, b: &Poly) -> QScalar {
    let space = a.space();
    let support = DiagonalSupport::new(space.dim());
    let mut acc = QScalar::zero();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            if !support.product_may_meet(ma.exponents(), mb.exponents()) {
                continue;
            }
            let prod = space.mul_monomials(ma, mb);
            let h: QScalar = prod.iter().map(|(m, c)| c * &h_monomial(space, m)).sum();
            if !h.is_zero() {
                acc = acc + ca * cb * h;
            }
        }
    }
    acc
}

/// Gram matrix `G[i][j] = <b_i, b_j>`.
pub fn gram(basis: &[Poly]) -> Result<Vec<Vec<QScalar>>> {
    let Some(first) = basis.first() else { return Ok(Vec::new()) };
    for b in basis {
        first.space().same(b.space())?;
    }
    let starred: Vec<Poly> = basis.par_iter().map(Poly::star).collect();
    Ok(starred
        .par_iter()
        .map(|a| basis.par_iter().map(|b| inner_starred(a, b)).collect())
        .collect())
}

/// Whether a Gram matrix is diagonal with nonzero diagonal.
pub fn is_orthogonal_basis(g: &[Vec<QScalar>]) -> bool {
    g.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, c)| (i == j) != c.is_zero()))
}

/// `<p, p>` evaluated at `t = t0`.
pub fn norm_at(p: &Poly, t0: &BigRational) -> Result<BigRational> {
    inner(p, p)?.eval_at(t0)
}

/// Whether `<p, p> > 0` at `t = t0`.
pub fn norm_positive_at(p: &Poly, t0: &BigRational) -> Result<bool> {
    Ok(norm_at(p, t0)? > BigRational::zero())
}
