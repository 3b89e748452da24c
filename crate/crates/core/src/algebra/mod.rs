//! The coordinate algebra `C_q[x_1, ..., x_N]` of the quantum Euclidean
//! space.
//!
//! Provides:
//! - [`Space`]: `N`, `n`, the ρ-vector and the index pairing `j ↦ j'`
//! - [`Monomial`]: PBW basis elements `x^ν`
//! - [`Poly`]: algebra elements in PBW normal form, with multiplication by
//!   rewriting, the star anti-automorphism, grading and JSON form
//! - [`q_radius`]: the squared q-radii `Q_j` (with `Q = Q_1`)
//!
//! Normal form puts generator indices in weakly increasing order. A product
//! is formed by pushing the right factor's generators one at a time into
//! the left normal monomial; a misordered pair `x_b x_a` (`a < b`) becomes
//! `q^{-1} x_a x_b` unless `b = a'`, in which case the middle-pair or
//! primed-pair relation applies. Products of a monomial by a generator are
//! memoized per space.

mod monomial;
mod poly;
mod space;

pub use monomial::Monomial;
pub use poly::{Poly, PolyJson, TermJson};
pub(crate) use poly::accumulate;
pub use space::Space;

use crate::error::{Error, Result};

/// `Q_j = Σ_{i=j}^{j'} q^{ρ_{i'}} x_i x_{i'}` for `1 <= j <= n`; `Q_1 = Q`.
pub fn q_radius(space: &Space, j: usize) -> Result<Poly> {
    if j < 1 || j > space.half() {
        return Err(Error::IndexOutOfRange { index: j as i64, max: space.half() });
    }
    Ok(q_radius_pow(space, j, 1))
}

/// `Q_j^k`, cached per space.
pub(crate) fn q_radius_pow(space: &Space, j: usize, k: u32) -> Poly {
    let cache = &space.inner().q_powers;
    if let Some(p) = cache.get(&(j, k)) {
        return p.value().clone();
    }
    let p = match k {
        0 => Poly::one(space),
        1 => {
            let mut acc = Poly::zero(space);
            for i in j..=space.prime(j) {
                let xi = Poly::generator(space, i).unwrap();
                let xip = Poly::generator(space, space.prime(i)).unwrap();
                acc = acc + (&xi * &xip).scale(&space.q_rho(space.prime(i)));
            }
            acc
        }
        _ => q_radius_pow(space, j, k - 1) * q_radius_pow(space, j, 1),
    };
    cache.insert((j, k), p.clone());
    p
}

/// The squared q-radius `Q`.
pub fn q_squared_radius(space: &Space) -> Poly {
    q_radius_pow(space, 1, 1)
}

/// `Q^k`.
pub fn q_power(space: &Space, k: u32) -> Poly {
    q_radius_pow(space, 1, k)
}

/// Weight `(ν_1 - ν_{1'}, ..., ν_n - ν_{n'})` of a monomial.
pub fn weight_of(m: &Monomial) -> Vec<i64> {
    m.weight()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QScalar;

    fn x(s: &Space, j: usize) -> Poly {
        Poly::generator(s, j).unwrap()
    }

    fn mono(s: &Space, nu: &[u32]) -> Poly {
        Poly::monomial(s, Monomial::new(nu.to_vec()))
    }

    #[test]
    fn rho_vectors() {
        assert_eq!(Space::new(3).unwrap().rho2_vec(), &[1, 0, -1]);
        assert_eq!(Space::new(4).unwrap().rho2_vec(), &[2, 0, 0, -2]);
        assert_eq!(Space::new(5).unwrap().rho2_vec(), &[3, 1, 0, -1, -3]);
        let s2 = Space::new(2).unwrap();
        assert_eq!(s2.rho2_vec(), &[0, 0]);
        assert_eq!(s2.half(), 1);
        assert!(matches!(Space::new(1), Err(Error::InvalidDimension { .. })));
        let s3 = Space::new(3).unwrap();
        assert_eq!((1..=3).map(|j| s3.prime(j)).collect::<Vec<_>>(), vec![3, 2, 1]);
    }

    #[test]
    fn rho_is_antisymmetric_and_prime_involutive() {
        for dim in 2..=9 {
            let s = Space::new(dim).unwrap();
            for j in 1..=dim {
                assert_eq!(s.rho2(s.prime(j)), -s.rho2(j));
                assert_eq!(s.prime(s.prime(j)), j);
            }
        }
    }

    #[test]
    fn relation_examples() {
        let s4 = Space::new(4).unwrap();
        assert_eq!(&x(&s4, 2) * &x(&s4, 1), mono(&s4, &[1, 1, 0, 0]).scale(&QScalar::q_pow(-1)));
        let expect = mono(&s4, &[1, 0, 0, 1]) + mono(&s4, &[0, 1, 1, 0]).scale(&(QScalar::q() - QScalar::q_pow(-1)));
        assert_eq!(&x(&s4, 4) * &x(&s4, 1), expect);
        assert_eq!(&x(&s4, 3) * &x(&s4, 2), mono(&s4, &[0, 1, 1, 0]));

        let s3 = Space::new(3).unwrap();
        let c = QScalar::t_pow(1) - QScalar::t_pow(-1);
        assert_eq!(&x(&s3, 3) * &x(&s3, 1), mono(&s3, &[1, 0, 1]) + mono(&s3, &[0, 2, 0]).scale(&c));
    }

    #[test]
    fn star_examples() {
        let s3 = Space::new(3).unwrap();
        assert_eq!(x(&s3, 1).star(), x(&s3, 3).scale(&QScalar::t_pow(-1)));
        let s5 = Space::new(5).unwrap();
        let p = &x(&s5, 1) * &x(&s5, 2);
        let expect = mono(&s5, &[0, 0, 0, 1, 1]).scale(&QScalar::q_pow(-2));
        assert_eq!(p.star(), expect);
        assert_eq!(&x(&s5, 2).star() * &x(&s5, 1).star(), expect);
        for j in 1..=5 {
            assert_eq!(x(&s5, j).star().star(), x(&s5, j));
        }
    }

    #[test]
    fn radius_examples() {
        let s3 = Space::new(3).unwrap();
        let q = q_radius(&s3, 1).unwrap();
        let expect = mono(&s3, &[1, 0, 1]).scale(&(QScalar::t_pow(1) + QScalar::t_pow(-1)))
            + mono(&s3, &[0, 2, 0]).scale(&QScalar::q());
        assert_eq!(q, expect);
        let s4 = Space::new(4).unwrap();
        assert_eq!(q_radius(&s4, 2).unwrap(), mono(&s4, &[0, 1, 1, 0]).scale(&QScalar::from_int(2)));
        assert!(matches!(q_radius(&s4, 3), Err(Error::IndexOutOfRange { .. })));
        for dim in 2..=7 {
            let s = Space::new(dim).unwrap();
            let q = q_squared_radius(&s);
            for j in 1..=dim {
                assert_eq!(&q * &x(&s, j), &x(&s, j) * &q, "N={dim} j={j}");
            }
        }
    }

    #[test]
    fn components_and_weights() {
        let s3 = Space::new(3).unwrap();
        let p = x(&s3, 1) + &x(&s3, 1) * &x(&s3, 2);
        let comps = p.homogeneous_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&1], x(&s3, 1));
        assert!(Poly::zero(&s3).homogeneous_components().is_empty());
        assert_eq!(q_squared_radius(&s3).homogeneous_components().keys().copied().collect::<Vec<_>>(), vec![2]);
        assert_eq!(weight_of(&Monomial::new(vec![2, 0, 1, 1])), vec![1, -1]);
    }

    #[test]
    fn embedding_is_multiplicative() {
        let small = Space::new(3).unwrap();
        let big = Space::new(5).unwrap();
        let a = &x(&small, 3) * &x(&small, 1);
        let b = x(&small, 3).embed(&big).unwrap() * x(&small, 1).embed(&big).unwrap();
        assert_eq!(a.embed(&big).unwrap(), b);
    }

    #[test]
    fn display() {
        let s3 = Space::new(3).unwrap();
        assert_eq!((&x(&s3, 3) * &x(&s3, 1)).to_string(), "x1 x3 + ((-1 + q)/q^(1/2)) x2^2");
        let p = x(&s3, 2).scale(&QScalar::from_int(-2)) + Poly::one(&s3);
        assert_eq!(p.to_string(), "-2 x2 + 1");
    }
}
