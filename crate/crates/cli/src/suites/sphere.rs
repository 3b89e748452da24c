use num_rational::BigRational;
use qharmonic::algebra::{q_squared_radius, weight_of};
use qharmonic::dualpair::{dimension_bookkeeping, lowest_weight_check, verify_sl2};
use qharmonic::harmonic::{xi_basis, zonal};
use qharmonic::operators::{chevalley, Generator};
use qharmonic::report::Report;
use qharmonic::sphere::{gram, h_functional, inner, is_orthogonal_basis, norm_positive_at};
use qharmonic::{Poly, QScalar, Result, Space};
use rayon::prelude::*;

use super::{gather, SuiteParams};

fn cell(r: &mut Report, id: String, outcome: Result<(bool, String)>) {
    match outcome {
        Ok((ok, detail)) => r.check(id, ok, detail),
        Err(e) => r.error(id, e),
    }
}

fn xi_polys(dim: usize, m: u32) -> Result<Vec<Poly>> {
    Ok(xi_basis(dim, m)?.into_iter().map(|(_, p)| p).collect())
}

/// The invariant functional and the scalar product: `h(Q a) = h(a)` on
/// monomials of degree <= 4 and `h(Q) = 1` for N = 3..6; diagonal Gram
/// matrices of the Ξ bases for (N, m) in (4, <=3), (5, <=3), (6, <=2), with
/// positive norms at t = 4/5; orthogonality across degrees, between
/// weights and within the zonal family; weights of zonal polynomials.
pub fn sphere(params: &SuiteParams) -> Report {
    let deg = params.deg_or(4);
    let mut parts: Vec<Report> = params.dims_or(3, 6).into_par_iter().map(|dim| functional(dim, deg)).collect();
    let pairs = params.pairs_or(&[(4, 3), (5, 3), (6, 2)]);
    let jobs: Vec<(usize, u32)> = pairs.iter().flat_map(|&(n, mm)| (0..=mm).map(move |m| (n, m))).collect();
    parts.extend(jobs.into_par_iter().map(|(dim, m)| xi_gram(dim, m)).collect::<Vec<_>>());
    parts.extend(pairs.par_iter().map(|&(dim, mm)| cross_degree(dim, mm)).collect::<Vec<_>>());
    let zdims = params.dims_or(4, 5);
    let zdeg = params.deg_or(4);
    parts.extend(zdims.par_iter().map(|&dim| zonal_family(dim, zdeg)).collect::<Vec<_>>());
    parts.extend(params.dims_or(3, 5).par_iter().map(|&dim| weight_orthogonality(dim)).collect::<Vec<_>>());
    gather("sphere", parts)
}

fn functional(dim: usize, deg: u32) -> Report {
    let mut r = Report::new("sphere");
    let outcome = (|| -> Result<(bool, String)> {
        let space = Space::new(dim)?;
        let q = q_squared_radius(&space);
        let monos = space.monomials_up_to(deg);
        let bad = monos.par_iter().find_first(|m| {
            let a = Poly::monomial(&space, (*m).clone());
            h_functional(&(&q * &a)) != h_functional(&a)
        });
        Ok(match bad {
            None => (true, format!("{} monomials", monos.len())),
            Some(m) => (false, format!("fails on {m}")),
        })
    })();
    cell(&mut r, format!("N={dim} h(Q a) = h(a) on monomials of degree <= {deg}"), outcome);
    let outcome = Space::new(dim).map(|s| {
        let v = h_functional(&q_squared_radius(&s));
        (v.is_one(), format!("h(Q) = {v}"))
    });
    cell(&mut r, format!("N={dim} h(Q) = 1"), outcome);
    r
}

fn xi_gram(dim: usize, m: u32) -> Report {
    let mut r = Report::new("sphere");
    let t0 = BigRational::new(4.into(), 5.into());
    let outcome = (|| -> Result<(bool, String)> {
        let basis = xi_polys(dim, m)?;
        let g = gram(&basis)?;
        Ok((is_orthogonal_basis(&g), format!("{0}x{0} Gram matrix", basis.len())))
    })();
    cell(&mut r, format!("N={dim} m={m} Gram matrix of the basis is diagonal"), outcome);
    let outcome = (|| -> Result<(bool, String)> {
        let basis = xi_polys(dim, m)?;
        let flags = basis.par_iter().map(|p| norm_positive_at(p, &t0)).collect::<Result<Vec<bool>>>()?;
        let bad = flags.iter().filter(|f| !**f).count();
        Ok((bad == 0, format!("{} norms, {bad} not positive", flags.len())))
    })();
    cell(&mut r, format!("N={dim} m={m} norms positive at t = 4/5"), outcome);
    r
}

fn cross_degree(dim: usize, mmax: u32) -> Report {
    let mut r = Report::new("sphere");
    let outcome = (|| -> Result<(bool, String)> {
        let bases: Vec<Vec<Poly>> = (0..=mmax).map(|m| xi_polys(dim, m)).collect::<Result<_>>()?;
        let mut pairs = Vec::new();
        for m in 0..=mmax as usize {
            for l in 0..m {
                for a in &bases[m] {
                    for b in &bases[l] {
                        pairs.push((a, b));
                    }
                }
            }
        }
        let values = pairs.par_iter().map(|(a, b)| inner(a, b)).collect::<Result<Vec<QScalar>>>()?;
        let bad = values.iter().filter(|v| !v.is_zero()).count();
        Ok((bad == 0, format!("{} pairs, {bad} nonzero", values.len())))
    })();
    cell(&mut r, format!("N={dim} H_m orthogonal to H_l, l < m <= {mmax}"), outcome);
    r
}

fn zonal_family(dim: usize, mmax: u32) -> Report {
    let mut r = Report::new("sphere");
    let space = match Space::new(dim) {
        Ok(s) => s,
        Err(e) => {
            r.error(format!("N={dim}"), e);
            return r;
        }
    };
    for m in 0..=mmax {
        let outcome = (|| -> Result<(bool, String)> {
            let family = (0..=m).map(|m1| zonal(dim, m1, m - m1)).collect::<Result<Vec<_>>>()?;
            let g = gram(&family)?;
            Ok((is_orthogonal_basis(&g), format!("{} zonal polynomials", family.len())))
        })();
        cell(&mut r, format!("N={dim} m={m} zonal family is orthogonal"), outcome);

        let outcome = (|| -> Result<(bool, String)> {
            let mut zero_weight = Vec::new();
            for m1 in 0..=m {
                let m1p = m - m1;
                let z = zonal(dim, m1, m1p)?;
                let k1 = chevalley(&space, Generator::KHat(1))?.apply(&z)?;
                let expected = z.scale(&QScalar::q_pow(m1 as i64 - m1p as i64));
                if k1 != expected {
                    return Ok((false, format!("Khat1 on zonal({m1},{m1p})")));
                }
                for i in 2..=space.half() {
                    if chevalley(&space, Generator::KHat(i))?.apply(&z)? != z {
                        return Ok((false, format!("Khat{i} moves zonal({m1},{m1p})")));
                    }
                }
                if k1 == z {
                    zero_weight.push(m1);
                }
            }
            let want: Vec<u32> = if m % 2 == 0 { vec![m / 2] } else { vec![] };
            Ok((zero_weight == want, format!("zero weight at m1 in {zero_weight:?}")))
        })();
        cell(&mut r, format!("N={dim} m={m} zonal weights, only m1 = m1' has weight zero"), outcome);
    }
    r
}

fn weight_orthogonality(dim: usize) -> Report {
    let mut r = Report::new("sphere");
    let outcome = (|| -> Result<(bool, String)> {
        let space = Space::new(dim)?;
        let monos = space.monomials_up_to(2);
        let mut pairs = Vec::new();
        for a in &monos {
            for b in &monos {
                if weight_of(a) != weight_of(b) {
                    pairs.push((a, b));
                }
            }
        }
        let values = pairs
            .par_iter()
            .map(|(a, b)| inner(&Poly::monomial(&space, (*a).clone()), &Poly::monomial(&space, (*b).clone())))
            .collect::<Result<Vec<QScalar>>>()?;
        let bad = values.iter().filter(|v| !v.is_zero()).count();
        Ok((bad == 0, format!("{} monomial pairs of different weight, {bad} nonzero", values.len())))
    })();
    cell(&mut r, format!("N={dim} different weights are orthogonal"), outcome);
    r
}

/// The `U_q(sl_2)` relations of `ω(k), ω(e), ω(f)` on `A_m`, m <= 6, for
/// N = 3..5; their action on `Q^r h` (m <= 3, r <= 3); the dimension
/// count `dim A_M = Σ dim H_m` for M <= 6.
pub fn dual_pair(params: &SuiteParams) -> Report {
    let dims = params.dims_or(3, 5);
    let deg = params.deg_or(6);
    let mut parts: Vec<Report> = dims
        .par_iter()
        .map(|&dim| match Space::new(dim) {
            Ok(s) => verify_sl2(&s, deg),
            Err(e) => {
                let mut r = Report::new("dual-pair");
                r.error(format!("N={dim}"), e);
                r
            }
        })
        .collect();
    let jobs: Vec<(usize, u32)> = dims.iter().flat_map(|&n| (0..=3).map(move |m| (n, m))).collect();
    parts.extend(
        jobs.into_par_iter()
            .map(|(dim, m)| {
                Space::new(dim).and_then(|s| lowest_weight_check(&s, m, 3)).unwrap_or_else(|e| {
                    let mut r = Report::new("dual-pair");
                    r.error(format!("N={dim} m={m}"), e);
                    r
                })
            })
            .collect::<Vec<_>>(),
    );
    for &dim in &dims {
        parts.push(dimension_bookkeeping(dim, deg).unwrap_or_else(|e| {
            let mut r = Report::new("dual-pair");
            r.error(format!("N={dim}"), e);
            r
        }));
    }
    gather("dual-pair", parts)
}
