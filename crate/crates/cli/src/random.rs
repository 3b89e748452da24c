//! Seeded random scalars and polynomials for the sampled suites.

use qharmonic::{Monomial, Poly, QScalar, Space};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A short Laurent polynomial in `t` with small integer coefficients.
fn laurent<R: Rng>(rng: &mut R) -> Vec<(i64, i64)> {
    let terms = rng.gen_range(1..=3);
    (0..terms).map(|_| (rng.gen_range(-4..=4), rng.gen_range(-3..=3))).collect()
}

/// A random nonzero element of `Q(t)`, sometimes with a nontrivial
/// denominator.
pub fn random_scalar<R: Rng>(rng: &mut R) -> QScalar {
    loop {
        let num = QScalar::from_laurent(&laurent(rng));
        if num.is_zero() {
            continue;
        }
        if rng.gen_bool(0.3) {
            let den = QScalar::from_laurent(&laurent(rng));
            if !den.is_zero() {
                return num / den;
            }
            continue;
        }
        return num;
    }
}

pub fn random_monomial<R: Rng>(rng: &mut R, space: &Space, max_deg: u32) -> Monomial {
    let deg = rng.gen_range(0..=max_deg);
    let mut nu = vec![0; space.dim()];
    for _ in 0..deg {
        nu[rng.gen_range(0..space.dim())] += 1;
    }
    Monomial::new(nu)
}

/// Sum of up to `max_terms` random terms of degree `<= max_deg`.
pub fn random_poly<R: Rng>(rng: &mut R, space: &Space, max_deg: u32, max_terms: usize) -> Poly {
    let terms = rng.gen_range(1..=max_terms);
    let list: Vec<(Monomial, QScalar)> =
        (0..terms).map(|_| (random_monomial(rng, space, max_deg), random_scalar(rng))).collect();
    Poly::from_terms(space, list)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_repeat() {
        let s = Space::new(4).unwrap();
        let a: Vec<Poly> = {
            let mut r = rng(7);
            (0..5).map(|_| random_poly(&mut r, &s, 3, 4)).collect()
        };
        let b: Vec<Poly> = {
            let mut r = rng(7);
            (0..5).map(|_| random_poly(&mut r, &s, 3, 4)).collect()
        };
        assert_eq!(a, b);
        assert!(a.iter().all(|p| p.max_degree().unwrap_or(0) <= 3));
    }
}
