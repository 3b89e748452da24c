//! q-numbers, q-factorials, q-Pochhammer symbols and terminating basic
//! hypergeometric series.

use super::QScalar;
use crate::error::{Error, Result};

/// Which q-number a bracket denotes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QConvention {
    /// `[a] = (1 - q^a) / (1 - q)`.
    Basic,
    /// `[a]_q = (q^a - q^{-a}) / (q - q^{-1})`.
    Symmetric,
}

/// The q-number of an integer `a` (zero and negative values allowed).
pub fn qnum(a: i64, conv: QConvention) -> QScalar {
    if a < 0 {
        return match conv {
            // (1 - q^a)/(1 - q) = -q^a [-a]
            QConvention::Basic => -(QScalar::q_pow(a) * qnum(-a, conv)),
            QConvention::Symmetric => -qnum(-a, conv),
        };
    }
    let terms: Vec<(i64, i64)> = match conv {
        QConvention::Basic => (0..a).map(|i| (2 * i, 1)).collect(),
        QConvention::Symmetric => (0..a).map(|i| (2 * (a - 1 - 2 * i), 1)).collect(),
    };
    QScalar::from_laurent(&terms)
}

/// `[1][2]...[m]`, with `[0]! = 1`.
pub fn qfactorial(m: u32, conv: QConvention) -> QScalar {
    (1..=m as i64).map(|i| qnum(i, conv)).product()
}

/// `[s][s-2][s-4]...` down to `[2]` or `[1]`, with `[0]!! = 1`.
pub fn qdouble_factorial(s: u32, conv: QConvention) -> QScalar {
    (1..=s as i64).rev().step_by(2).map(|i| qnum(i, conv)).product()
}

/// `(a; base)_s = (1 - a)(1 - a base)...(1 - a base^{s-1})`.
pub fn qpochhammer(a: &QScalar, base: &QScalar, s: u32) -> QScalar {
    let one = QScalar::one();
    let mut acc = QScalar::one();
    let mut factor = a.clone();
    for _ in 0..s {
        acc = acc * (&one - &factor);
        factor = factor * base;
    }
    acc
}

/// Largest termination order searched for when deciding whether a series
/// terminates.
pub const MAX_SERIES_TERMS: usize = 512;

/// Smallest `j` with `a * base^j = 1`, i.e. `(a; base)_{j+1} = 0`.
fn termination_order(a: &QScalar, base: &QScalar) -> Option<usize> {
    let mut cur = a.clone();
    for j in 0..MAX_SERIES_TERMS {
        if cur.is_one() {
            return Some(j);
        }
        cur = cur * base;
    }
    None
}

/// Coefficients `c_k` of the terminating series
/// `2phi1(a1, a2; b; base, z) = Σ_k c_k z^k`,
/// `c_k = (a1;base)_k (a2;base)_k / ((base;base)_k (b;base)_k)`.
///
/// The sequence stops before the first vanishing coefficient, so its length
/// is the number of surviving terms.
pub fn phi21(a1: &QScalar, a2: &QScalar, b: &QScalar, base: &QScalar) -> Result<Vec<QScalar>> {
    let order = match (termination_order(a1, base), termination_order(a2, base)) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => return Err(Error::NonTerminating(MAX_SERIES_TERMS)),
    };
    let one = QScalar::one();
    let mut coeffs = vec![QScalar::one()];
    // base^{k-1} for the current k
    let mut prev_pow = QScalar::one();
    for _ in 1..=order {
        let cur_pow = &prev_pow * base;
        let up = (&one - a1 * &prev_pow) * (&one - a2 * &prev_pow);
        let down = (&one - &cur_pow) * (&one - b * &prev_pow);
        if down.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let next = coeffs.last().unwrap() * &up.checked_div(&down)?;
        coeffs.push(next);
        prev_pow = cur_pow;
    }
    Ok(coeffs)
}

/// Sum the terminating series at a concrete argument `z`.
pub fn phi21_at(a1: &QScalar, a2: &QScalar, b: &QScalar, base: &QScalar, z: &QScalar) -> Result<QScalar> {
    let coeffs = phi21(a1, a2, b, base)?;
    let mut acc = QScalar::zero();
    let mut zk = QScalar::one();
    for c in &coeffs {
        acc = acc + c * &zk;
        zk = zk * z;
    }
    Ok(acc)
}

/// Little q-Jacobi polynomial `P_k^{(α,β)}(x; q)` in base `q`, returned as
/// its coefficients in `x` (lowest degree first).
///
/// `alpha2` and `beta2` are `2α` and `2β`, so half-integer parameters are
/// exact.
pub fn little_q_jacobi(k: u32, alpha2: i64, beta2: i64) -> Result<Vec<QScalar>> {
    little_q_jacobi_in_base(k, alpha2, beta2, 1)
}

/// [`little_q_jacobi`] with base `p = q^base_exp`:
/// `2phi1(p^{-k}, p^{α+β+k+1}; p^{α+1}; p, p x)`.
pub fn little_q_jacobi_in_base(k: u32, alpha2: i64, beta2: i64, base_exp: i64) -> Result<Vec<QScalar>> {
    // p^{r} for half-integer r = r2/2 is t^{base_exp * r2}.
    let p_half = |r2: i64| QScalar::t_pow(base_exp * r2);
    let k = k as i64;
    let base = p_half(2);
    let coeffs = phi21(&p_half(-2 * k), &p_half(alpha2 + beta2 + 2 * k + 2), &p_half(alpha2 + 2), &base)?;
    let mut scale = QScalar::one();
    Ok(coeffs
        .into_iter()
        .map(|c| {
            let out = c * &scale;
            scale = &scale * &base;
            out
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use QConvention::{Basic, Symmetric};

    fn q() -> QScalar {
        QScalar::q()
    }

    fn qp(a: i64) -> QScalar {
        QScalar::q_pow(a)
    }

    #[test]
    fn qnumbers() {
        assert_eq!(qnum(0, Basic), QScalar::zero());
        assert_eq!(qnum(3, Basic), QScalar::one() + q() + q().pow(2));
        assert_eq!(qnum(2, Symmetric), q() + qp(-1));
        let one = QScalar::one();
        for a in -8..=8 {
            let expect = (&one - qp(a)) / (&one - q());
            assert_eq!(qnum(a, Basic), expect, "basic {a}");
            let sym = qnum(a, Symmetric);
            assert_eq!((q() - qp(-1)) * &sym, qp(a) - qp(-a), "symmetric {a}");
            assert_eq!(sym, qp(1 - a) * (&one - qp(2 * a)) / (&one - qp(2)));
        }
    }

    #[test]
    fn factorials() {
        assert!(qfactorial(0, Basic).is_one());
        assert_eq!(qfactorial(2, Basic), QScalar::one() + q());
        assert_eq!(qdouble_factorial(4, Basic), qnum(4, Basic) * qnum(2, Basic));
        assert!(qdouble_factorial(0, Basic).is_one());
        assert_eq!(qdouble_factorial(5, Basic), qnum(5, Basic) * qnum(3, Basic));
    }

    #[test]
    fn factorial_ratio_as_pochhammers() {
        let one = QScalar::one();
        let q2 = qp(2);
        for m in 0..=8i64 {
            for k in 0..=m / 2 {
                let lhs = qfactorial(m as u32, Basic) / qfactorial((m - 2 * k) as u32, Basic);
                let rhs = qpochhammer(&qp(m - 2 * k + 2), &q2, k as u32)
                    * qpochhammer(&qp(m - 2 * k + 1), &q2, k as u32)
                    / (&one - q()).pow(2 * k as u32);
                assert_eq!(lhs, rhs, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn double_factorial_as_pochhammer() {
        let one = QScalar::one();
        for k in 0..=6u32 {
            let rhs = qpochhammer(&qp(2), &qp(2), k) / (&one - q()).pow(k);
            assert_eq!(qdouble_factorial(2 * k, Basic), rhs);
        }
    }

    #[test]
    fn pochhammer_examples() {
        let a = q() + QScalar::from_int(5);
        assert!(qpochhammer(&a, &qp(2), 0).is_one());
        assert_eq!(qpochhammer(&qp(-2), &qp(2), 1), QScalar::one() - qp(-2));
        assert!(qpochhammer(&qp(-2), &qp(2), 2).is_zero());
    }

    #[test]
    fn phi21_examples() {
        let base = qp(2);
        let any = q() + QScalar::from_int(3);
        let c = phi21(&QScalar::one(), &any, &qp(5), &base).unwrap();
        assert_eq!(c, vec![QScalar::one()]);

        let c = phi21(&qp(-2), &qp(-1), &qp(-3), &base).unwrap();
        let one = QScalar::one();
        let c1 = (&one - qp(-2)) * (&one - qp(-1)) / ((&one - qp(2)) * (&one - qp(-3)));
        assert_eq!(c.len(), 2);
        assert_eq!(c[1], c1);
        assert!(phi21_at(&qp(-2), &qp(-1), &qp(-3), &base, &QScalar::zero()).unwrap().is_one());
    }

    #[test]
    fn phi21_pole_before_termination() {
        // b = base^{-1}: (b; base)_2 vanishes before (q^{-4}; q^2) does.
        let base = qp(2);
        let r = phi21(&qp(-4), &q(), &qp(-2), &base);
        assert_eq!(r, Err(Error::DivisionByZero));
    }

    #[test]
    fn phi21_non_terminating() {
        let r = phi21(&qp(3), &q(), &qp(7), &qp(2));
        assert_eq!(r, Err(Error::NonTerminating(MAX_SERIES_TERMS)));
    }

    #[test]
    fn little_jacobi_low_degrees() {
        assert_eq!(little_q_jacobi(0, 3, -1).unwrap(), vec![QScalar::one()]);
        let (a2, b2) = (5, 1);
        let p1 = little_q_jacobi(1, a2, b2).unwrap();
        let one = QScalar::one();
        // α + β + 2 = 5, α + 1 = 7/2; the (q^{-1};q)_1 / (q;q)_1 = -q^{-1}
        // factor cancels the q of the argument q x.
        let expect = -((&one - qp(5)) / (&one - QScalar::t_pow(7)));
        assert_eq!(p1, vec![one, expect]);
    }
}
