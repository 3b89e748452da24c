//! Harmonic polynomials.
//!
//! Provides:
//! - [`dim_full`], [`dim_harmonic`]: dimensions of `A_m` and `H_m`
//! - [`project`]: the projector `H_m` onto `Δ_q`-harmonic polynomials
//! - [`harmonic_decompose`]: `p = Σ_j Q^j h_j` with `h_j` harmonic
//! - [`zonal`], [`t_poly`], [`closed_form_middle`], [`middle_jacobi_form`]
//! - [`xi_basis`]: the orthogonal bases built from t-polynomials

mod xi;
mod zonal;

pub use xi::{xi_basis, xi_element, xi_labels, HarmonicLabel};
pub use zonal::{closed_form_middle, middle_jacobi_form, t_coefficient, t_poly, zonal, JacobiForm};

use crate::algebra::{q_power, q_squared_radius, Monomial, Poly, Space};
use crate::error::{Error, Result};
use crate::operators::{laplacian, LaplacianMode};
use crate::scalar::{qpochhammer, QScalar};

fn binomial(n: u64, k: u64) -> Result<u128> {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or_else(|| Error::InvalidArgument(format!("binomial({n}, {k}) overflows")))?
            / (i as u128 + 1);
    }
    Ok(acc)
}

/// `dim A_m = (N+m-1)! / ((N-1)! m!)`.
pub fn dim_full(dim: usize, m: u32) -> Result<u128> {
    if dim < 1 {
        return Err(Error::InvalidDimension { n: dim, reason: "needs N >= 1" });
    }
    binomial(dim as u64 + m as u64 - 1, m as u64)
}

/// `dim H_m = (m+N-3)! (2m+N-2) / ((N-2)! m!)` for `N >= 3`.
///
/// For `N = 2` the harmonic space is spanned by `1` in degree 0 and by
/// `x_1^m`, `x_2^m` in degree `m >= 1`.
pub fn dim_harmonic(dim: usize, m: u32) -> Result<u128> {
    match dim {
        0 | 1 => Err(Error::InvalidDimension { n: dim, reason: "needs N >= 2" }),
        2 => Ok(if m == 0 { 1 } else { 2 }),
        _ => {
            let n = dim as u128;
            let b = binomial(m as u64 + dim as u64 - 3, m as u64)?;
            let top = b
                .checked_mul(2 * m as u128 + n - 2)
                .ok_or_else(|| Error::InvalidArgument("dimension overflows".into()))?;
            Ok(top / (n - 2))
        }
    }
}

fn q2() -> QScalar {
    QScalar::q_pow(2)
}

/// The coefficient `α_k` of `Q̂^k Δ_q^k` in the projector on degree `m`.
pub fn projector_coefficient(dim: usize, m: u32, k: u32) -> QScalar {
    let (n, m, ki) = (dim as i64, m as i64, k as i64);
    let num = QScalar::q_pow(2 * ki * ki - 2 * m * ki - ki) * (QScalar::one() - q2()).pow(2 * k);
    let den = (QScalar::one() + QScalar::q_pow(n - 2)).pow(2 * k)
        * qpochhammer(&QScalar::q_pow(-n - 2 * m + 4), &q2(), k)
        * qpochhammer(&q2(), &q2(), k);
    num / den
}

/// `H_m p = Σ_{k <= m/2} α_k Q^k Δ_q^k p` for homogeneous `p` of degree `m`.
pub fn project(p: &Poly) -> Result<Poly> {
    let Some(m) = p.homogeneous_degree() else {
        return if p.is_zero() { Ok(p.clone()) } else { Err(Error::NotHomogeneous) };
    };
    let space = p.space();
    let lap = laplacian(space, LaplacianMode::Direct);
    let mut out = p.clone();
    let mut lk = p.clone();
    for k in 1..=m / 2 {
        lk = lap.apply(&lk)?;
        if lk.is_zero() {
            break;
        }
        let term = (&q_power(space, k) * &lk).scale(&projector_coefficient(space.dim(), m, k));
        out = out + term;
    }
    Ok(out)
}

/// Exact quotient `p / Q`, or an internal error when `Q` does not divide
/// `p`.
pub fn divide_by_q(p: &Poly) -> Result<Poly> {
    let space = p.space().clone();
    let q = q_squared_radius(&space);
    let (lead_m, _) = q.leading_term().expect("Q is nonzero");
    let lead_m = lead_m.clone();
    let mut rem = p.clone();
    let mut quot = Poly::zero(&space);
    while let Some((m, c)) = rem.leading_term() {
        let rest = m
            .divide(&lead_m)
            .ok_or_else(|| Error::Internal(format!("Q does not divide: leading monomial {m}")))?;
        let shifted = &q * &Poly::monomial(&space, rest.clone());
        let d = shifted.coeff(m);
        let factor = c.checked_div(&d)?;
        quot = quot + Poly::term(&space, rest, factor.clone());
        rem = rem - shifted.scale(&factor);
    }
    Ok(quot)
}

/// Decompose homogeneous `p` of degree `m` as `Σ_j Q^j h_j`, `h_j ∈ H_{m-2j}`.
/// Zero components are omitted.
pub fn harmonic_decompose(p: &Poly) -> Result<Vec<(u32, Poly)>> {
    if p.homogeneous_degree().is_none() && !p.is_zero() {
        return Err(Error::NotHomogeneous);
    }
    let mut out = Vec::new();
    let mut rem = p.clone();
    let mut j = 0;
    while !rem.is_zero() {
        let h = project(&rem)?;
        let rest = &rem - &h;
        if !h.is_zero() {
            out.push((j, h));
        }
        rem = divide_by_q(&rest)?;
        j += 1;
    }
    Ok(out)
}

/// `project(x^ν)` for every monomial of degree `m`.
pub fn projected_basis(space: &Space, m: u32) -> Result<Vec<(Monomial, Poly)>> {
    use rayon::prelude::*;
    space
        .monomials(m)
        .into_par_iter()
        .map(|mono| {
            let p = project(&Poly::monomial(space, mono.clone()))?;
            Ok((mono, p))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qnum, QConvention};

    fn mono(s: &Space, nu: &[u32]) -> Poly {
        Poly::monomial(s, Monomial::new(nu.to_vec()))
    }

    #[test]
    fn dimensions() {
        assert_eq!(dim_harmonic(3, 2).unwrap(), 5);
        assert_eq!(dim_full(3, 2).unwrap(), 6);
        for dim in 2..=9 {
            assert_eq!(dim_harmonic(dim, 0).unwrap(), 1);
            for m in 2..=8 {
                let direct = dim_full(dim, m).unwrap() - dim_full(dim, m - 2).unwrap();
                assert_eq!(dim_harmonic(dim, m).unwrap(), direct, "N={dim} m={m}");
            }
        }
        assert!(matches!(dim_harmonic(1, 3), Err(Error::InvalidDimension { .. })));
    }

    #[test]
    fn projector_examples() {
        let s3 = Space::new(3).unwrap();
        let x2sq = mono(&s3, &[0, 2, 0]);
        let q = q_squared_radius(&s3);
        let c = QScalar::q() / qnum(3, QConvention::Basic);
        let expect = &x2sq - &q.scale(&c);
        assert_eq!(project(&x2sq).unwrap(), expect);
        assert!(project(&q).unwrap().is_zero());
        for j in 1..=3 {
            let x = Poly::generator(&s3, j).unwrap();
            assert_eq!(project(&x).unwrap(), x);
        }
        let mixed = &x2sq + &Poly::generator(&s3, 1).unwrap();
        assert!(matches!(project(&mixed), Err(Error::NotHomogeneous)));
        let dec = harmonic_decompose(&x2sq).unwrap();
        assert_eq!(dec, vec![(0, expect), (1, Poly::constant(&s3, c))]);
        assert_eq!(harmonic_decompose(&q).unwrap(), vec![(1, Poly::one(&s3))]);
    }

    #[test]
    fn projection_is_harmonic_and_idempotent() {
        for dim in 3..=5 {
            let s = Space::new(dim).unwrap();
            let lap = laplacian(&s, LaplacianMode::Direct);
            for (_, h) in projected_basis(&s, 4).unwrap() {
                assert!(lap.apply(&h).unwrap().is_zero());
                assert_eq!(project(&h).unwrap(), h);
            }
        }
    }

    #[test]
    fn division_by_q() {
        let s = Space::new(4).unwrap();
        let q = q_squared_radius(&s);
        let p = mono(&s, &[0, 2, 1, 0]) + mono(&s, &[1, 0, 0, 0]).scale(&QScalar::t_pow(3));
        assert_eq!(divide_by_q(&(&p * &q)).unwrap(), p);
        assert!(matches!(divide_by_q(&mono(&s, &[0, 2, 0, 0])), Err(Error::Internal(_))));
    }
}
