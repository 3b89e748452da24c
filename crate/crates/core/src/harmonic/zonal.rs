use std::fmt;

use crate::algebra::{q_power, Monomial, Poly, Space};
use crate::error::{Error, Result};
use crate::scalar::{little_q_jacobi_in_base, qpochhammer, QScalar};

fn q2() -> QScalar {
    QScalar::q_pow(2)
}

/// The coefficient `C^{m,k}_{m_1 m'_1}` of `Q^k x_1^{m_1-k} x_{1'}^{m'_1-k}`
/// in the t-polynomial, with `l = m - m_1 - m'_1`.
pub fn t_coefficient(dim: usize, m: u32, m1: u32, m1p: u32, l: u32, k: u32) -> QScalar {
    let n = (dim / 2) as i64;
    let eps2 = if dim % 2 == 0 { 2 } else { 1 };
    let (nn, mi, li, ki) = (dim as i64, m as i64, l as i64, k as i64);
    let num = qpochhammer(&QScalar::q_pow(-2 * m1 as i64), &q2(), k)
        * qpochhammer(&QScalar::q_pow(-2 * m1p as i64), &q2(), k);
    let den = qpochhammer(&q2(), &q2(), k)
        * qpochhammer(&QScalar::q_pow(-nn - 2 * mi + 4), &q2(), k)
        * (QScalar::one() + QScalar::q_pow(nn - 2)).pow(k);
    num * QScalar::t_pow((-2 * n + eps2 - 4 * li + 4) * ki) / den
}

/// `t^{N,m}_{m_1 m'_1} = Σ_k C^{m,k} Q^k x_1^{m_1-k} x_{1'}^{m'_1-k}`, the
/// polynomial with `H_m(x_1^{m_1} x_{1'}^{m'_1} h_l) = t^{N,m}_{m_1 m'_1} h_l`
/// for every harmonic `h_l` in the inner variables.
pub fn t_poly(dim: usize, m: u32, m1: u32, m1p: u32, l: u32) -> Result<Poly> {
    if m1 + m1p + l != m {
        return Err(Error::DegreeMismatch(format!("m = {m} but m1 + m1' + l = {}", m1 + m1p + l)));
    }
    let space = Space::new(dim)?;
    let mut out = Poly::zero(&space);
    for k in 0..=m1.min(m1p) {
        let mut nu = vec![0; dim];
        nu[0] = m1 - k;
        nu[dim - 1] = m1p - k;
        let term = &q_power(&space, k) * &Poly::monomial(&space, Monomial::new(nu));
        out = out + term.scale(&t_coefficient(dim, m, m1, m1p, l, k));
    }
    Ok(out)
}

/// The zonal polynomial `φ^m_{m_1 m'_1} = H_m(x_1^{m_1} x_{1'}^{m'_1})`.
pub fn zonal(dim: usize, m1: u32, m1p: u32) -> Result<Poly> {
    t_poly(dim, m1 + m1p, m1, m1p, 0)
}

fn middle_space(dim: usize) -> Result<Space> {
    if dim % 2 == 0 {
        return Err(Error::InvalidDimension { n: dim, reason: "the middle variable needs odd N" });
    }
    Space::new(dim)
}

/// `H_m x_{n+1}^m` for odd `N` from its closed hypergeometric form.
pub fn closed_form_middle(dim: usize, m: u32) -> Result<Poly> {
    let space = middle_space(dim)?;
    let (nn, mi) = (dim as i64, m as i64);
    let a = QScalar::q() * (QScalar::one() + QScalar::q()) / (QScalar::one() + QScalar::q_pow(nn - 2));
    let mut out = Poly::zero(&space);
    for k in 0..=m / 2 {
        let c = qpochhammer(&QScalar::q_pow(-mi), &q2(), k) * qpochhammer(&QScalar::q_pow(-mi + 1), &q2(), k)
            / (qpochhammer(&q2(), &q2(), k) * qpochhammer(&QScalar::q_pow(-nn - 2 * mi + 4), &q2(), k))
            * a.pow(k);
        out = out + (&q_power(&space, k) * &middle_power(&space, m - 2 * k)).scale(&c);
    }
    Ok(out)
}

fn middle_power(space: &Space, e: u32) -> Poly {
    let mut nu = vec![0; space.dim()];
    nu[space.half()] = e;
    Poly::monomial(space, Monomial::new(nu))
}

/// `H_m x_{n+1}^m = x_{n+1}^m P^{(α,β)}_d(s Q x_{n+1}^{-2}; q^2)`, a little
/// q-Jacobi polynomial in base `q^2` with `d = ⌊m/2⌋`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiForm {
    pub dim: usize,
    pub m: u32,
    pub degree: u32,
    /// `2α`.
    pub alpha2: i64,
    /// `2β`.
    pub beta2: i64,
    /// The base is `q^base_exp`.
    pub base_exp: i64,
    /// The factor `s` in the argument.
    pub scale: QScalar,
    /// Coefficients of the polynomial in its argument, lowest first.
    pub coefficients: Vec<QScalar>,
}

/// The little q-Jacobi form of `H_m x_{n+1}^m` (odd `N`).
pub fn middle_jacobi_form(dim: usize, m: u32) -> Result<JacobiForm> {
    middle_space(dim)?;
    let nn = dim as i64;
    let (alpha2, beta2) = (-nn - 2 * m as i64 + 2, nn - 3);
    let degree = m / 2;
    let coefficients = little_q_jacobi_in_base(degree, alpha2, beta2, 2)?;
    let scale = (QScalar::one() + QScalar::q()) / (QScalar::q() * (QScalar::one() + QScalar::q_pow(nn - 2)));
    Ok(JacobiForm { dim, m, degree, alpha2, beta2, base_exp: 2, scale, coefficients })
}

impl JacobiForm {
    /// Expand back to a polynomial; negative powers of `x_{n+1}` cancel.
    pub fn to_poly(&self) -> Result<Poly> {
        let space = Space::new(self.dim)?;
        let mut out = Poly::zero(&space);
        for (j, c) in self.coefficients.iter().enumerate() {
            let j = j as u32;
            let term = &q_power(&space, j) * &middle_power(&space, self.m - 2 * j);
            out = out + term.scale(&(c * &self.scale.pow(j)));
        }
        Ok(out)
    }
}

fn half(v: i64) -> String {
    if v % 2 == 0 {
        (v / 2).to_string()
    } else {
        format!("{v}/2")
    }
}

impl fmt::Display for JacobiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = format!("x{}", self.dim / 2 + 1);
        write!(
            f,
            "{x}^{} P_{}^({}, {})(({}) Q {x}^-2; q^{})",
            self.m,
            self.degree,
            half(self.alpha2),
            half(self.beta2),
            self.scale,
            self.base_exp
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::project;
    use crate::scalar::{qnum, QConvention};

    #[test]
    fn zonal_examples() {
        for dim in 3..=6 {
            let s = Space::new(dim).unwrap();
            assert_eq!(zonal(dim, 1, 0).unwrap(), Poly::generator(&s, 1).unwrap());
            assert_eq!(zonal(dim, 3, 0).unwrap(), Poly::generator(&s, 1).unwrap().pow(3));
        }
        let s4 = Space::new(4).unwrap();
        let c1 = (QScalar::one() - QScalar::q_pow(-2)).pow(2)
            / ((QScalar::one() - QScalar::q_pow(2)) * (QScalar::one() - QScalar::q_pow(-4)))
            * QScalar::q()
            / (QScalar::one() + QScalar::q_pow(2));
        let x1x4 = Poly::monomial(&s4, Monomial::new(vec![1, 0, 0, 1]));
        let expect = &x1x4 + &q_power(&s4, 1).scale(&c1);
        assert_eq!(zonal(4, 1, 1).unwrap(), expect);
        assert_eq!(project(&x1x4).unwrap(), expect);
    }

    #[test]
    fn t_poly_degree_checks() {
        assert!(matches!(t_poly(5, 4, 1, 1, 1), Err(Error::DegreeMismatch(_))));
        assert_eq!(t_poly(5, 3, 1, 1, 1).unwrap().homogeneous_degree(), Some(2));
        assert_eq!(t_poly(6, 2 + 2, 2, 0, 2).unwrap(), Poly::generator(&Space::new(6).unwrap(), 1).unwrap().pow(2));
        assert_eq!(t_poly(5, 3, 2, 1, 0).unwrap(), zonal(5, 2, 1).unwrap());
    }

    #[test]
    fn middle_closed_form() {
        let s3 = Space::new(3).unwrap();
        assert!(closed_form_middle(3, 0).unwrap().as_scalar().unwrap().is_one());
        assert_eq!(closed_form_middle(3, 1).unwrap(), Poly::generator(&s3, 2).unwrap());
        let x2sq = Poly::generator(&s3, 2).unwrap().pow(2);
        let expect = &x2sq - &q_power(&s3, 1).scale(&(QScalar::q() / qnum(3, QConvention::Basic)));
        assert_eq!(closed_form_middle(3, 2).unwrap(), expect);
        assert!(matches!(closed_form_middle(4, 2), Err(Error::InvalidDimension { .. })));
        for dim in [3usize, 5, 7] {
            let s = Space::new(dim).unwrap();
            for m in 0..=5 {
                let direct = project(&middle_power(&s, m)).unwrap();
                assert_eq!(closed_form_middle(dim, m).unwrap(), direct, "N={dim} m={m}");
                let jf = middle_jacobi_form(dim, m).unwrap();
                assert_eq!(jf.to_poly().unwrap(), direct, "Jacobi form N={dim} m={m}");
            }
        }
    }

    #[test]
    fn jacobi_rendering() {
        let jf = middle_jacobi_form(3, 2).unwrap();
        assert_eq!(jf.degree, 1);
        assert_eq!(jf.to_string(), "x2^2 P_1^(-5/2, 0)((1/q) Q x2^-2; q^2)");
    }
}
