//! Exact scalars: rational functions in `t = q^{1/2}` over the rationals.
//!
//! Provides:
//! - [`QScalar`]: a reduced fraction of integer polynomials in `t`
//! - [`ZPoly`]: the integer polynomials underneath
//! - [`QConvention`] and the q-combinatorial functions in [`qfun`]

mod qfun;
mod zpoly;

pub use qfun::*;
pub use zpoly::ZPoly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of `Q(t)` in canonical form.
///
/// Mathematically the value is `numerator() / denominator()` with both
/// integer polynomials, coprime, jointly content-free and the denominator
/// having a positive leading coefficient. Internally the power of `t` is
/// kept apart (`t^shift * num / den` with `num(0) != 0 != den(0)`), which
/// keeps GCD inputs small; the two descriptions determine each other, so
/// derived equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    shift: i64,
    num: ZPoly,
    den: ZPoly,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar { shift: 0, num: ZPoly::zero(), den: ZPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QScalar { shift: 0, num: ZPoly::constant(c), den: ZPoly::one() }
    }

    pub fn from_ratio(r: &BigRational) -> Self {
        Self::from_parts(ZPoly::constant(r.numer().clone()), ZPoly::constant(r.denom().clone()))
            .expect("BigRational has a nonzero denominator")
    }

    /// `t^k`, i.e. `q^{k/2}`.
    pub fn t_pow(k: i64) -> Self {
        QScalar { shift: k, num: ZPoly::one(), den: ZPoly::one() }
    }

    /// `q^a`.
    pub fn q_pow(a: i64) -> Self {
        Self::t_pow(2 * a)
    }

    /// `q`.
    pub fn q() -> Self {
        Self::t_pow(2)
    }

    /// `Σ c * t^e` over the given `(e, c)` pairs; exponents may be negative.
    pub fn from_laurent(terms: &[(i64, i64)]) -> Self {
        let Some(lo) = terms.iter().map(|&(e, _)| e).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|&(e, _)| e).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for &(e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::finish(lo, ZPoly::from_coeffs(coeffs), ZPoly::one())
    }

    /// Build `num / den` from integer polynomials in `t`.
    pub fn from_parts(num: ZPoly, den: ZPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(0, num, den))
    }

    /// Canonicalize `t^shift * num / den` from scratch.
    fn normalize(shift: i64, num: ZPoly, den: ZPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (vn, vd) = (num.valuation(), den.valuation());
        let shift = shift + vn as i64 - vd as i64;
        let mut num = num.unshift(vn);
        let mut den = den.unshift(vd);
        if !den.is_constant() && !num.is_constant() {
            let g = ZPoly::gcd(&num, &den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        Self::finish(shift, num, den)
    }

    /// Final step shared by every constructor: clear the common integer
    /// content, fix the sign, strip powers of `t` from the numerator. The
    /// caller guarantees the polynomial parts are already coprime and that
    /// `den(0) != 0`.
    fn finish(shift: i64, num: ZPoly, den: ZPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let vn = num.valuation();
        let (shift, mut num, mut den) =
            if vn > 0 { (shift + vn as i64, num.unshift(vn), den) } else { (shift, num, den) };
        if !den.is_one() {
            let mut c = num.content().gcd(&den.content());
            if zpoly::lead_is_negative(&den) {
                c = -c;
            }
            if !c.is_one() {
                num = num.div_scalar(&c);
                den = den.div_scalar(&c);
            }
        }
        QScalar { shift, num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the value is `c * t^k` for an integer `c`.
    pub fn is_monomial(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    /// Numerator as a polynomial in `t` (positive powers of `t` included).
    pub fn numerator(&self) -> ZPoly {
        if self.shift > 0 {
            self.num.shift(self.shift as usize)
        } else {
            self.num.clone()
        }
    }

    /// Denominator as a polynomial in `t` (negative powers of `t` become a
    /// factor `t^k` here).
    pub fn denominator(&self) -> ZPoly {
        if self.shift < 0 {
            self.den.shift((-self.shift) as usize)
        } else {
            self.den.clone()
        }
    }

    /// The constant value, if the scalar does not depend on `t`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        (self.shift == 0 && self.num.is_constant() && self.den.is_constant())
            .then(|| BigRational::new(self.num.coeff(0), self.den.coeff(0)))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (num, den) = if zpoly::lead_is_negative(&self.num) {
            (self.den.neg(), self.num.neg())
        } else {
            (self.den.clone(), self.num.clone())
        };
        Ok(QScalar { shift: -self.shift, num, den })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let p = self.pow(e.unsigned_abs() as u32);
        if e < 0 {
            p.inv()
        } else {
            Ok(p)
        }
    }

    /// Exact value at `t = t0`.
    pub fn eval_at(&self, t0: &BigRational) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let d = self.den.eval_rational(t0);
        if d.is_zero() || (t0.is_zero() && self.shift < 0) {
            return Err(Error::PoleAtPoint(t0.to_string()));
        }
        let n = self.num.eval_rational(t0);
        let tp = if self.shift >= 0 {
            num_traits::pow(t0.clone(), self.shift as usize)
        } else {
            num_traits::pow(t0.recip(), (-self.shift) as usize)
        };
        Ok(n * tp / d)
    }

    fn add_impl(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let e = a.shift.min(b.shift);
        let an = a.num.shift((a.shift - e) as usize);
        let bn = b.num.shift((b.shift - e) as usize);
        if a.den == b.den {
            let num = an.add(&bn);
            if a.den.is_one() {
                return Self::finish(e, num, ZPoly::one());
            }
            return Self::normalize(e, num, a.den.clone());
        }
        let g = ZPoly::gcd(&a.den, &b.den);
        let (ad, bd) = if g.is_one() {
            (a.den.clone(), b.den.clone())
        } else {
            (a.den.div_exact(&g).unwrap(), b.den.div_exact(&g).unwrap())
        };
        let mut num = an.mul(&bd).add(&bn.mul(&ad));
        let mut den = a.den.mul(&bd);
        if num.is_zero() {
            return Self::zero();
        }
        // Only factors of gcd(a.den, b.den) can survive into a common
        // factor of the new numerator and denominator.
        if !g.is_one() {
            let h = ZPoly::gcd(&num, &g);
            if !h.is_one() {
                num = num.div_exact(&h).unwrap();
                den = den.div_exact(&h).unwrap();
            }
        }
        Self::finish(e, num, den)
    }

    fn mul_impl(a: &Self, b: &Self) -> Self {
        if a.is_zero() || b.is_zero() {
            return Self::zero();
        }
        let shift = a.shift + b.shift;
        if a.den.is_one() && b.den.is_one() {
            return QScalar { shift, num: a.num.mul(&b.num), den: ZPoly::one() };
        }
        let (mut an, mut ad) = (a.num.clone(), a.den.clone());
        let (mut bn, mut bd) = (b.num.clone(), b.den.clone());
        let g1 = ZPoly::gcd(&an, &bd);
        if !g1.is_one() {
            an = an.div_exact(&g1).unwrap();
            bd = bd.div_exact(&g1).unwrap();
        }
        let g2 = ZPoly::gcd(&bn, &ad);
        if !g2.is_one() {
            bn = bn.div_exact(&g2).unwrap();
            ad = ad.div_exact(&g2).unwrap();
        }
        Self::finish(shift, an.mul(&bn), ad.mul(&bd))
    }
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for QScalar {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { shift: self.shift, num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&QScalar> for &QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &QScalar) -> QScalar {
                $body(self, rhs)
            }
        }
        impl $trait<QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                $body(&self, &rhs)
            }
        }
        impl $trait<&QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &QScalar) -> QScalar {
                $body(&self, rhs)
            }
        }
        impl $trait<QScalar> for &QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, QScalar::add_impl);
forward_binop!(Sub, sub, |a: &QScalar, b: &QScalar| QScalar::add_impl(a, &-b));
forward_binop!(Mul, mul, QScalar::mul_impl);
forward_binop!(Div, div, |a: &QScalar, b: &QScalar| a
    .checked_div(b)
    .expect("QScalar division by zero"));

impl Zero for QScalar {
    fn zero() -> Self {
        QScalar::zero()
    }
    fn is_zero(&self) -> bool {
        QScalar::is_zero(self)
    }
}

impl One for QScalar {
    fn one() -> Self {
        QScalar::one()
    }
}

impl std::iter::Sum for QScalar {
    fn sum<I: Iterator<Item = QScalar>>(iter: I) -> Self {
        iter.fold(QScalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for QScalar {
    fn product<I: Iterator<Item = QScalar>>(iter: I) -> Self {
        iter.fold(QScalar::one(), |a, b| a * b)
    }
}

/// Render `Σ c_k t^k` as a polynomial in `q` and half-integer powers of `q`.
fn write_tpoly(f: &mut fmt::Formatter<'_>, p: &ZPoly) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    let mut first = true;
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        let a = c.abs();
        if k == 0 {
            write!(f, "{a}")?;
            continue;
        }
        if !a.is_one() {
            write!(f, "{a}*")?;
        }
        write_qpow(f, k)?;
    }
    Ok(())
}

fn write_qpow(f: &mut fmt::Formatter<'_>, k: usize) -> fmt::Result {
    match (k % 2, k / 2) {
        (0, 1) => f.write_str("q"),
        (0, e) => write!(f, "q^{e}"),
        _ => write!(f, "q^({k}/2)"),
    }
}

/// Number of nonzero terms.
fn term_count(p: &ZPoly) -> usize {
    p.coeffs().iter().filter(|c| !c.is_zero()).count()
}

/// A single term that parses as an atom after `/`: `7`, `q`, `q^3`, `q^(1/2)`.
fn is_atomic(p: &ZPoly) -> bool {
    term_count(p) == 1 && (p.is_constant() || p.lead().is_some_and(|c| c.is_one()))
}

impl QScalar {
    /// Whether the printed form is a single signed product with no `/`,
    /// so it can stand as a factor without parentheses.
    pub fn prints_as_product(&self) -> bool {
        self.den.is_one() && self.shift >= 0 && term_count(&self.num) == 1
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.numerator();
        let den = self.denominator();
        if den.is_one() {
            return write_tpoly(f, &num);
        }
        if term_count(&num) > 1 {
            f.write_str("(")?;
            write_tpoly(f, &num)?;
            f.write_str(")")?;
        } else {
            write_tpoly(f, &num)?;
        }
        f.write_str("/")?;
        if is_atomic(&den) {
            write_tpoly(f, &den)
        } else {
            f.write_str("(")?;
            write_tpoly(f, &den)?;
            f.write_str(")")
        }
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QScalar {
        QScalar::q()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn canonical_zero_and_one() {
        let a = &q() - &q();
        assert_eq!(a, QScalar::zero());
        assert_eq!(a.numerator(), ZPoly::zero());
        assert_eq!(a.denominator(), ZPoly::one());
        assert!((&q() / &q()).is_one());
    }

    #[test]
    fn reduction_cancels_common_factors() {
        let one = QScalar::one();
        let a = (&one - &q().pow(2)) / (&one - &q());
        assert_eq!(a, &one + &q());
        assert_eq!(a.denominator(), ZPoly::one());
    }

    #[test]
    fn denominator_sign_and_content() {
        let a = QScalar::from_int(2) / (QScalar::from_int(-4) * q());
        assert_eq!(a.numerator(), ZPoly::from_i64s(&[-1]));
        assert_eq!(a.denominator(), ZPoly::from_i64s(&[0, 0, 2]));
        let half = QScalar::from_ratio(&r(1, 2));
        assert_eq!(half.denominator(), ZPoly::from_i64s(&[2]));
    }

    #[test]
    fn negative_powers_are_denominators() {
        let a = QScalar::t_pow(-3);
        assert_eq!(a.numerator(), ZPoly::one());
        assert_eq!(a.denominator(), ZPoly::from_i64s(&[0, 0, 0, 1]));
        assert_eq!(a.to_string(), "1/q^(3/2)");
    }

    #[test]
    fn rendering() {
        let one = QScalar::one();
        let a = (&one - &q().pow(2)) / (&one + &q() + q().pow(2));
        assert_eq!(a.to_string(), "(1 - q^2)/(1 + q + q^2)");
        assert_eq!(QScalar::t_pow(1).to_string(), "q^(1/2)");
        assert_eq!((QScalar::from_int(-2) * q()).to_string(), "-2*q");
        assert_eq!((QScalar::from_int(3) / (QScalar::from_int(2) * q())).to_string(), "3/(2*q)");
        assert_eq!(QScalar::from_ratio(&r(-1, 3)).to_string(), "-1/3");
    }

    #[test]
    fn evaluation() {
        let one = QScalar::one();
        assert_eq!((&one + &q()).eval_at(&r(1, 1)).unwrap(), r(2, 1));
        let a = (&one - q().pow(2)) / (&one - &q());
        assert_eq!(a.eval_at(&r(2, 1)).unwrap(), r(5, 1));
        let pole = one.checked_div(&(&one - &q())).unwrap();
        assert!(matches!(pole.eval_at(&r(1, 1)), Err(Error::PoleAtPoint(_))));
        assert!(matches!(QScalar::t_pow(-1).eval_at(&r(0, 1)), Err(Error::PoleAtPoint(_))));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(QScalar::one().checked_div(&QScalar::zero()), Err(Error::DivisionByZero));
        assert_eq!(QScalar::zero().inv(), Err(Error::DivisionByZero));
    }
}
