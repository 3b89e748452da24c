use std::fmt;

use crate::algebra::{Monomial, Poly, Space};
use crate::error::{Error, Result};
use crate::scalar::{qnum, QConvention, QScalar};

use super::calculus::need_rank_two;
use super::LinearOperator;

/// A Chevalley generator of `U_q(so_N)` acting on the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    E(usize),
    F(usize),
    /// `K_i`, defined for `i < n`.
    K(usize),
    /// `K̂_i = q^{H_i}`, defined for `i <= n`.
    KHat(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(k) => write!(f, "E{k}"),
            Generator::F(k) => write!(f, "F{k}"),
            Generator::K(k) => write!(f, "K{k}"),
            Generator::KHat(k) => write!(f, "Khat{k}"),
        }
    }
}

impl Generator {
    /// Every generator that acts on the given space.
    pub fn all(space: &Space) -> Vec<Generator> {
        let n = space.half();
        let mut out = Vec::new();
        if space.dim() >= 3 {
            for k in 1..=n {
                out.push(Generator::E(k));
                out.push(Generator::F(k));
            }
        }
        out.extend((1..n).map(Generator::K));
        out.extend((1..=n).map(Generator::KHat));
        out
    }
}

fn sym(a: u32) -> QScalar {
    qnum(a as i64, QConvention::Symmetric)
}

fn emit(out: &mut Vec<(Monomial, QScalar)>, m: &Monomial, delta: &[(usize, i64)], c: QScalar) {
    if let Some(m2) = m.shifted(delta) {
        if !c.is_zero() {
            out.push((m2, c));
        }
    }
}

/// The action of a Chevalley generator on monomials.
pub fn chevalley(space: &Space, gen: Generator) -> Result<LinearOperator> {
    let n = space.half();
    let (k, limit) = match gen {
        Generator::E(k) | Generator::F(k) => {
            need_rank_two(space)?;
            (k, n)
        }
        Generator::K(k) => (k, n.saturating_sub(1)),
        Generator::KHat(k) => (k, n),
    };
    if k < 1 || k > limit {
        return Err(Error::IndexOutOfRange { index: k as i64, max: limit });
    }
    let s = space.clone();
    let p = move |j: usize| s.prime(j);
    let s = space.clone();
    let e = |x: i64| QScalar::q_pow(x);
    let v = |m: &Monomial, j: usize| m.exp(j) as i64;

    let op = match gen {
        Generator::KHat(i) => super::diagonal_by(space, move |m| e(v(m, i) - v(m, p(i)))),
        Generator::K(i) => {
            super::diagonal_by(space, move |m| e((v(m, i) - v(m, p(i))) - (v(m, i + 1) - v(m, p(i + 1)))))
        }
        Generator::E(k) if k < n => LinearOperator::new(space, Some(0), move |m| {
            let (kp, k1p) = (p(k), p(k + 1));
            let mut out = Vec::new();
            let c1 = sym(m.exp(k + 1)) * e(v(m, k) - v(m, k + 1) + 1);
            emit(&mut out, m, &[(k, 1), (k + 1, -1)], c1);
            let c2 = -sym(m.exp(kp)) * e(v(m, k) - v(m, k + 1) - v(m, kp) + v(m, k1p) + 1);
            emit(&mut out, m, &[(k1p, 1), (kp, -1)], c2);
            Poly::from_terms(&s, out)
        }),
        Generator::F(k) if k < n => LinearOperator::new(space, Some(0), move |m| {
            let (kp, k1p) = (p(k), p(k + 1));
            let mut out = Vec::new();
            let c1 = sym(m.exp(k)) * e(-v(m, k) + v(m, k + 1) - v(m, k1p) + v(m, kp) + 1);
            emit(&mut out, m, &[(k, -1), (k + 1, 1)], c1);
            let c2 = -sym(m.exp(k1p)) * e(-v(m, k1p) + v(m, kp) + 1);
            emit(&mut out, m, &[(k1p, -1), (kp, 1)], c2);
            Poly::from_terms(&s, out)
        }),
        Generator::E(_) if space.is_odd() => LinearOperator::new(space, Some(0), move |m| {
            let (a, b, c) = (n, n + 1, n + 2);
            let mut out = Vec::new();
            let c1 = qnum(v(m, b), QConvention::Basic) * QScalar::t_pow(2 * (v(m, a) - v(m, b)) + 3);
            emit(&mut out, m, &[(a, 1), (b, -1)], c1);
            let c2 = -sym(m.exp(c)) * e(v(m, a) - v(m, c) + 1);
            emit(&mut out, m, &[(b, 1), (c, -1)], c2);
            Poly::from_terms(&s, out)
        }),
        Generator::F(_) if space.is_odd() => LinearOperator::new(space, Some(0), move |m| {
            let (a, b, c) = (n, n + 1, n + 2);
            let mut out = Vec::new();
            let c1 = sym(m.exp(a)) * QScalar::t_pow(2 * (v(m, c) - v(m, a)) + 1);
            emit(&mut out, m, &[(a, -1), (b, 1)], c1);
            let c2 = -qnum(v(m, b), QConvention::Basic) * e(-v(m, b) + v(m, c) + 1);
            emit(&mut out, m, &[(b, -1), (c, 1)], c2);
            Poly::from_terms(&s, out)
        }),
        Generator::E(_) => LinearOperator::new(space, Some(0), move |m| {
            let (a, b, c, d) = (n - 1, n, n + 1, n + 2);
            let mut out = Vec::new();
            let c1 = sym(m.exp(c)) * e(v(m, a) - v(m, c) + 1);
            emit(&mut out, m, &[(a, 1), (c, -1)], c1);
            let c2 = -sym(m.exp(d)) * e(v(m, a) + v(m, b) - v(m, c) - v(m, d) + 1);
            emit(&mut out, m, &[(b, 1), (d, -1)], c2);
            Poly::from_terms(&s, out)
        }),
        Generator::F(_) => LinearOperator::new(space, Some(0), move |m| {
            let (a, b, c, d) = (n - 1, n, n + 1, n + 2);
            let mut out = Vec::new();
            let c1 = sym(m.exp(a)) * e(-v(m, a) - v(m, b) + v(m, c) + v(m, d) + 1);
            emit(&mut out, m, &[(a, -1), (c, 1)], c1);
            let c2 = -sym(m.exp(b)) * e(-v(m, b) + v(m, d) + 1);
            emit(&mut out, m, &[(b, -1), (d, 1)], c2);
            Poly::from_terms(&s, out)
        }),
    };
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{laplacian, qhat, LaplacianMode};

    fn mono(s: &Space, nu: &[u32]) -> Poly {
        Poly::monomial(s, Monomial::new(nu.to_vec()))
    }

    #[test]
    fn examples() {
        let s3 = Space::new(3).unwrap();
        let e1 = chevalley(&s3, Generator::E(1)).unwrap();
        // [1] q^{0 - 1 + 3/2} x_1
        assert_eq!(e1.apply(&mono(&s3, &[0, 1, 0])).unwrap(), mono(&s3, &[1, 0, 0]).scale(&QScalar::t_pow(1)));
        for dim in 3..=6 {
            let s = Space::new(dim).unwrap();
            for k in 1..=s.half() {
                assert!(chevalley(&s, Generator::E(k)).unwrap().apply(&Poly::one(&s)).unwrap().is_zero());
            }
        }
        let s4 = Space::new(4).unwrap();
        let kh = chevalley(&s4, Generator::KHat(1)).unwrap();
        let p = mono(&s4, &[3, 0, 0, 1]);
        assert_eq!(kh.apply(&p).unwrap(), p.scale(&QScalar::q_pow(2)));
    }

    #[test]
    fn invalid_generators() {
        let s2 = Space::new(2).unwrap();
        assert!(matches!(chevalley(&s2, Generator::E(1)), Err(Error::InvalidDimension { .. })));
        assert!(chevalley(&s2, Generator::KHat(1)).is_ok());
        let s5 = Space::new(5).unwrap();
        assert!(matches!(chevalley(&s5, Generator::F(3)), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(chevalley(&s5, Generator::K(2)), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(chevalley(&s5, Generator::E(0)), Err(Error::IndexOutOfRange { .. })));
        assert_eq!(Generator::all(&s5).len(), 4 + 1 + 2);
    }

    #[test]
    fn khat_matches_weight() {
        let s = Space::new(5).unwrap();
        for m in s.monomials(3) {
            let w = m.weight();
            for i in 1..=2 {
                let img = chevalley(&s, Generator::KHat(i)).unwrap().on_monomial(&m);
                assert_eq!(img.coeff(&m), QScalar::q_pow(w[i - 1]));
            }
        }
    }

    #[test]
    fn small_equivariance() {
        for dim in [3usize, 4] {
            let s = Space::new(dim).unwrap();
            let lap = laplacian(&s, LaplacianMode::Direct);
            let qh = qhat(&s);
            for g in Generator::all(&s) {
                let op = chevalley(&s, g).unwrap();
                assert!(lap.commutator(&op).unwrap().check_zero_on(3).is_ok(), "N={dim} {g} vs Δ");
                assert!(qh.commutator(&op).unwrap().check_zero_on(3).is_ok(), "N={dim} {g} vs Q");
            }
        }
    }
}
