use std::collections::BTreeMap;

use num_rational::BigRational;
use qharmonic::algebra::{q_power, q_squared_radius};
use qharmonic::harmonic::{
    closed_form_middle, dim_harmonic, harmonic_decompose, middle_jacobi_form, project, projected_basis, t_poly, xi_basis,
    zonal,
};
use qharmonic::linalg::rank;
use qharmonic::operators::{chevalley, laplacian, partial, Generator, LaplacianMode, LinearOperator};
use qharmonic::report::Report;
use qharmonic::scalar::{qfactorial, qnum, qpochhammer, QConvention};
use qharmonic::{Monomial, Poly, QScalar, Result, Space};
use rayon::prelude::*;

use super::{equal, gather, SuiteParams};

fn cell_or_error(r: &mut Report, id: String, outcome: Result<(bool, String)>) {
    match outcome {
        Ok((ok, detail)) => r.check(id, ok, detail),
        Err(e) => r.error(id, e),
    }
}

fn mono(space: &Space, nu: Vec<u32>) -> Poly {
    Poly::monomial(space, Monomial::new(nu))
}

/// `x_1^a x_{1'}^b`.
fn corner(space: &Space, a: u32, b: u32) -> Poly {
    let mut nu = vec![0; space.dim()];
    nu[0] = a;
    nu[space.dim() - 1] = b;
    mono(space, nu)
}

/// `x_{n+1}^e` for odd `N`.
fn middle(space: &Space, e: u32) -> Poly {
    let mut nu = vec![0; space.dim()];
    nu[space.half()] = e;
    mono(space, nu)
}

fn projector_operator(space: &Space) -> LinearOperator {
    let s = space.clone();
    LinearOperator::new(space, Some(0), move |m| project(&Poly::monomial(&s, m.clone())).expect("homogeneous input"))
        .memoized()
}

/// For every monomial of degree m <= 5, N = 3..6: `Δ H_m x^ν = 0` and
/// `H_m H_m x^ν = H_m x^ν`; the image has rank `dim H_m`. For m <= 3 the
/// projector also commutes with every Chevalley generator.
pub fn projector(params: &SuiteParams) -> Report {
    let mmax = params.deg_or(5);
    let jobs: Vec<(usize, u32)> = params.dims_or(3, 6).into_iter().flat_map(|n| (0..=mmax).map(move |m| (n, m))).collect();
    let parts = jobs.into_par_iter().map(|(dim, m)| projector_cells(dim, m)).collect();
    gather("projector", parts)
}

fn projector_cells(dim: usize, m: u32) -> Report {
    let mut r = Report::new("projector");
    let space = Space::new(dim).unwrap();
    let images = match projected_basis(&space, m) {
        Ok(v) => v,
        Err(e) => {
            r.error(format!("N={dim} m={m} projector"), e);
            return r;
        }
    };
    let lap = laplacian(&space, LaplacianMode::Direct);
    let bad = images.par_iter().find_first(|(_, h)| !lap.apply(h).map(|v| v.is_zero()).unwrap_or(false));
    r.check(
        format!("N={dim} m={m} projector output is harmonic"),
        bad.is_none(),
        match bad {
            None => format!("{} monomials", images.len()),
            Some((mono, _)) => format!("Laplacian of H_m {mono} is nonzero"),
        },
    );
    let bad = images.par_iter().find_first(|(_, h)| project(h).ok().as_ref() != Some(h));
    r.check(
        format!("N={dim} m={m} projector is idempotent"),
        bad.is_none(),
        match bad {
            None => format!("{} monomials", images.len()),
            Some((mono, _)) => format!("H_m H_m {mono} != H_m {mono}"),
        },
    );
    let polys: Vec<Poly> = images.into_iter().map(|(_, h)| h).collect();
    let got = rank(&polys);
    cell_or_error(
        &mut r,
        format!("N={dim} m={m} rank of the image"),
        dim_harmonic(dim, m).map(|want| (got as u128 == want, format!("rank {got}, dim H_m = {want}"))),
    );
    if m <= 3 && dim >= 3 {
        let h = projector_operator(&space);
        let fam = Generator::all(&space)
            .into_iter()
            .map(|g| (g.to_string(), chevalley(&space, g).and_then(|op| h.commutator(&op))))
            .collect();
        zero_family_at(&mut r, format!("N={dim} m={m} projector commutes with U_q(so_N)"), fam, m);
    }
    r
}

/// Like [`zero_family`], restricted to the single degree `m`.
fn zero_family_at(r: &mut Report, id: String, family: Vec<(String, Result<LinearOperator>)>, m: u32) {
    let outcome = family.into_par_iter().map(|(label, op)| match op {
        Ok(op) => op.check_zero_on_range(m, m).map_err(|c| format!("{label}: nonzero {c}")),
        Err(e) => Err(format!("{label}: error: {e}")),
    });
    let first = outcome.collect::<Vec<_>>().into_iter().find_map(|x| x.err());
    match first {
        None => r.check(id, true, format!("zero on A_{m}")),
        Some(why) => r.check(id, false, why),
    }
}

/// Every monomial of degree m <= 5 equals `Σ Q^j h_j` with `h_j` harmonic
/// of degree `m - 2j`, N = 3..6.
pub fn decomposition(params: &SuiteParams) -> Report {
    let mmax = params.deg_or(5);
    let jobs: Vec<(usize, u32)> = params.dims_or(3, 6).into_iter().flat_map(|n| (0..=mmax).map(move |m| (n, m))).collect();
    let parts = jobs
        .into_par_iter()
        .map(|(dim, m)| {
            let mut r = Report::new("decomposition");
            let space = Space::new(dim).unwrap();
            let lap = laplacian(&space, LaplacianMode::Direct);
            let monos = space.monomials(m);
            let check = |mono: &Monomial| -> Result<bool> {
                let p = Poly::monomial(&space, mono.clone());
                let parts = harmonic_decompose(&p)?;
                let mut sum = Poly::zero(&space);
                for (j, h) in &parts {
                    if h.homogeneous_degree() != Some(m - 2 * j) || !lap.apply(h)?.is_zero() {
                        return Ok(false);
                    }
                    sum = sum + &q_power(&space, *j) * h;
                }
                Ok(sum == p)
            };
            let bad = monos.par_iter().find_first(|mono| !check(mono).unwrap_or(false));
            let id = format!("N={dim} m={m} monomials split into Q^j times harmonics");
            match bad {
                None => r.check(id, true, format!("{} monomials", monos.len())),
                Some(mono) => r.check(id, false, format!("fails on {mono}")),
            }
            r
        })
        .collect();
    gather("decomposition", parts)
}

/// For odd N: powers of the Laplacian on `x_{n+1}^m` (m <= 5, k <= 2), the
/// hypergeometric closed form of `H_m x_{n+1}^m` (m <= 4) against the
/// projector, and its little q-Jacobi rendering. For N = 3, the value of
/// `H_2 x_2^2` at q = 1 against the classical projection.
pub fn closed_forms(params: &SuiteParams) -> Report {
    let odd: Vec<usize> = params.dims_or(3, 5).into_iter().filter(|n| n % 2 == 1).collect();
    let mmax = params.deg_or(5);
    let mut parts: Vec<Report> = odd.par_iter().map(|&dim| laplacian_powers(dim, mmax)).collect();
    let more: Vec<Report> = odd.par_iter().map(|&dim| middle_projection(dim, mmax.min(4))).collect();
    parts.extend(more);
    parts.push(classical_limit());
    gather("closed-forms", parts)
}

fn laplacian_powers(dim: usize, mmax: u32) -> Report {
    let mut r = Report::new("closed-forms");
    let space = Space::new(dim).unwrap();
    let lap = laplacian(&space, LaplacianMode::Direct);
    let nn = dim as i64;
    let step = QScalar::q() * (QScalar::one() + QScalar::q_pow(nn - 2)) / (QScalar::one() + QScalar::q());
    for m in 0..=mmax {
        let mut current = middle(&space, m);
        for k in 1..=2u32.min(m / 2) {
            current = lap.apply(&current).unwrap();
            let falling = qfactorial(m, QConvention::Basic) / qfactorial(m - 2 * k, QConvention::Basic);
            let want = middle(&space, m - 2 * k).scale(&(step.pow(k) * falling));
            equal(&mut r, format!("N={dim} m={m} k={k} Laplacian power on x_(n+1)^m"), &current, &want, "basic brackets");
        }
    }
    r
}

fn middle_projection(dim: usize, mmax: u32) -> Report {
    let mut r = Report::new("closed-forms");
    let space = Space::new(dim).unwrap();
    for m in 0..=mmax {
        let id = format!("N={dim} m={m} hypergeometric form of H_m x_(n+1)^m");
        match (closed_form_middle(dim, m), project(&middle(&space, m))) {
            (Ok(closed), Ok(proj)) => equal(&mut r, id, &closed, &proj, "against the projector"),
            (Err(e), _) | (_, Err(e)) => r.error(id, e),
        }
        let id = format!("N={dim} m={m} little q-Jacobi form");
        let outcome = (|| -> Result<(bool, String)> {
            let form = middle_jacobi_form(dim, m)?;
            let closed = closed_form_middle(dim, m)?;
            let series = middle_series(dim, m);
            let bad = (0..form.coefficients.len().max(series.len())).find(|&j| {
                let got = form.coefficients.get(j).map(|c| c * &form.scale.pow(j as u32));
                got.as_ref() != series.get(j)
            });
            let same = form.to_poly()? == closed;
            Ok(match bad {
                None if same => (true, format!("{form}")),
                None => (false, format!("{form} does not expand to the closed form")),
                Some(j) => (false, format!("coefficient {j} of {form} differs")),
            })
        })();
        cell_or_error(&mut r, id, outcome);
    }
    r
}

/// Coefficients of `(Q x_{n+1}^{-2})^k` in the hypergeometric form of
/// `H_m x_{n+1}^m`.
fn middle_series(dim: usize, m: u32) -> Vec<QScalar> {
    let (nn, mi) = (dim as i64, m as i64);
    let q2 = QScalar::q_pow(2);
    let a = QScalar::q() * (QScalar::one() + QScalar::q()) / (QScalar::one() + QScalar::q_pow(nn - 2));
    (0..=m / 2)
        .map(|k| {
            qpochhammer(&QScalar::q_pow(-mi), &q2, k) * qpochhammer(&QScalar::q_pow(-mi + 1), &q2, k)
                / (qpochhammer(&q2, &q2, k) * qpochhammer(&QScalar::q_pow(-nn - 2 * mi + 4), &q2, k))
                * a.pow(k)
        })
        .collect()
}

fn eval_terms(p: &Poly, t0: &BigRational) -> Result<BTreeMap<Monomial, BigRational>> {
    let mut out = BTreeMap::new();
    for (m, c) in p.terms() {
        let v = c.eval_at(t0)?;
        if v != BigRational::from_integer(0.into()) {
            out.insert(m.clone(), v);
        }
    }
    Ok(out)
}

fn classical_limit() -> Report {
    let mut r = Report::new("closed-forms");
    let id = "N=3 H_2 x_2^2 at q = 1 is x^2 - Q/3".to_string();
    let outcome = (|| -> Result<(bool, String)> {
        let space = Space::new(3)?;
        let one = BigRational::from_integer(1.into());
        let x2sq = middle(&space, 2);
        let got = eval_terms(&project(&x2sq)?, &one)?;
        let mut want = eval_terms(&x2sq, &one)?;
        let third = BigRational::new(1.into(), 3.into());
        for (m, c) in eval_terms(&q_squared_radius(&space), &one)? {
            let e = want.entry(m).or_insert_with(|| BigRational::from_integer(0.into()));
            *e -= &third * c;
        }
        want.retain(|_, c| *c != BigRational::from_integer(0.into()));
        let show = |v: &BTreeMap<Monomial, BigRational>| {
            v.iter().map(|(m, c)| format!("{c} {m}")).collect::<Vec<_>>().join(" + ")
        };
        Ok((got == want, format!("got {}, classical {}", show(&got), show(&want))))
    })();
    cell_or_error(&mut r, id, outcome);
    r
}

fn inner_laplacian(space: &Space) -> Result<LinearOperator> {
    let parts = (2..space.dim())
        .map(|i| Ok((space.q_rho(i), partial(space, i)?.compose(&partial(space, space.prime(i))?)?)))
        .collect::<Result<Vec<_>>>()?;
    LinearOperator::linear_combination(space, parts)
}

/// Harmonics of the inner variables `x_2 .. x_{2'}`: the Ξ basis of
/// `H_l` in dimension N - 2, embedded.
fn inner_harmonics(space: &Space, l: u32) -> Result<Vec<Poly>> {
    xi_basis(space.dim() - 2, l)?.into_iter().map(|(_, h)| h.embed(space)).collect()
}

/// For N = 4, 5: zonal polynomials against the projector (m1 + m1' <= 4);
/// t-polynomials times inner harmonics `h_l` (l <= 2, total degree <= 4);
/// the Laplacian on `x_1^a x_{1'}^b h` (a, b <= 3) and its powers
/// (k <= 2); the inner-variable lemmas.
pub fn zonal_polynomials(params: &SuiteParams) -> Report {
    let deg = params.deg_or(4);
    let parts = params.dims_or(4, 5).into_par_iter().map(|dim| zonal_cells(dim, deg)).collect();
    gather("zonal", parts)
}

fn zonal_cells(dim: usize, deg: u32) -> Report {
    let mut r = Report::new("zonal");
    let space = match Space::new(dim) {
        Ok(s) if dim >= 3 => s,
        _ => {
            r.error(format!("N={dim}"), "needs N >= 3");
            return r;
        }
    };
    for total in 0..=deg {
        for m1 in 0..=total {
            let m1p = total - m1;
            let id = format!("N={dim} zonal({m1},{m1p}) = projection of x_1^{m1} x_1'^{m1p}");
            match (zonal(dim, m1, m1p), project(&corner(&space, m1, m1p))) {
                (Ok(z), Ok(p)) => equal(&mut r, id, &z, &p, "exact"),
                (Err(e), _) | (_, Err(e)) => r.error(id, e),
            }
        }
    }

    for l in 0..=2u32.min(deg) {
        let id = format!("N={dim} l={l} t-polynomial factorization");
        let outcome = (|| -> Result<(bool, String)> {
            let hs = inner_harmonics(&space, l)?;
            let mut checked = 0;
            for total in l..=deg {
                for m1 in 0..=total - l {
                    let m1p = total - l - m1;
                    let t = t_poly(dim, total, m1, m1p, l)?;
                    for h in &hs {
                        let lhs = project(&(&corner(&space, m1, m1p) * h))?;
                        if lhs != &t * h {
                            return Ok((false, format!("m={total} m1={m1} m1'={m1p} differs on {h}")));
                        }
                        checked += 1;
                    }
                }
            }
            Ok((true, format!("{checked} products with {} inner harmonics", hs.len())))
        })();
        cell_or_error(&mut r, id, outcome);
    }

    let lap = laplacian(&space, LaplacianMode::Direct);
    let nn = dim as i64;
    let rho1 = space.rho2(1);
    let sym = |a: u32| qnum(a as i64, QConvention::Symmetric);
    let eps2 = if space.is_odd() { 1 } else { 2 };
    let n2 = 2 * space.half() as i64;
    for l in 0..=1u32 {
        let id = format!("N={dim} l={l} Laplacian on x_1^a x_1'^b h, a, b <= 3");
        let outcome = (|| -> Result<(bool, String)> {
            for h in inner_harmonics(&space, l)? {
                for a in 0..=3 {
                    for b in 0..=3 {
                        let got = lap.apply(&(&corner(&space, a, b) * &h))?;
                        let want = if a == 0 || b == 0 {
                            Poly::zero(&space)
                        } else {
                            let c = (QScalar::t_pow(rho1) + QScalar::t_pow(-rho1))
                                * sym(a)
                                * sym(b)
                                * QScalar::q_pow(a as i64 + b as i64 - 1);
                            (&corner(&space, a - 1, b - 1) * &h).scale(&c)
                        };
                        if got != want {
                            return Ok((false, format!("a={a} b={b} h={h}")));
                        }
                    }
                }
            }
            Ok((true, "exact".into()))
        })();
        cell_or_error(&mut r, id, outcome);

        let id = format!("N={dim} l={l} Laplacian powers on x_1^a x_1'^b h, k <= 2");
        let outcome = (|| -> Result<(bool, String)> {
            for h in inner_harmonics(&space, l)? {
                for a in 0..=3u32 {
                    for b in 0..=3u32 {
                        let mut cur = &corner(&space, a, b) * &h;
                        for k in 1..=2u32 {
                            cur = lap.apply(&cur)?;
                            let want = if k > a || k > b {
                                Poly::zero(&space)
                            } else {
                                let ki = k as i64;
                                let falling = |x: u32| {
                                    qfactorial(x, QConvention::Symmetric) / qfactorial(x - k, QConvention::Symmetric)
                                };
                                let c = (QScalar::one() + QScalar::q_pow(nn - 2)).pow(k)
                                    * QScalar::q_pow((a as i64 + b as i64 - ki) * ki)
                                    * QScalar::t_pow(-(n2 - eps2) * ki)
                                    * falling(a)
                                    * falling(b);
                                (&corner(&space, a - k, b - k) * &h).scale(&c)
                            };
                            if cur != want {
                                return Ok((false, format!("a={a} b={b} k={k} h={h}")));
                            }
                        }
                    }
                }
            }
            Ok((true, "exact".into()))
        })();
        cell_or_error(&mut r, id, outcome);
    }

    let id = format!("N={dim} inner harmonics are killed by d_1' and the Laplacian");
    let outcome = (|| -> Result<(bool, String)> {
        let inner = inner_laplacian(&space)?;
        let d1p = partial(&space, dim)?;
        let mut count = 0;
        for l in 0..=3 {
            for h in inner_harmonics(&space, l)? {
                if !inner.apply(&h)?.is_zero() {
                    return Ok((false, format!("inner Laplacian of {h} is nonzero")));
                }
                if !d1p.apply(&h)?.is_zero() || !lap.apply(&h)?.is_zero() {
                    return Ok((false, format!("fails on {h}")));
                }
                count += 1;
            }
        }
        Ok((true, format!("{count} inner harmonics of degree <= 3")))
    })();
    cell_or_error(&mut r, id, outcome);

    let id = format!("N={dim} inner Laplacian passes through x_1^a x_1'^b");
    let outcome = (|| -> Result<(bool, String)> {
        let inner = inner_laplacian(&space)?;
        let small = Space::new(dim - 2)?;
        let mut count = 0;
        for d in 0..=3 {
            for mono in small.monomials(d) {
                let p = Poly::monomial(&small, mono).embed(&space)?;
                let ip = inner.apply(&p)?;
                for a in 0..=2 {
                    for b in 0..=2 {
                        let c = corner(&space, a, b);
                        if inner.apply(&(&c * &p))? != &c * &ip {
                            return Ok((false, format!("a={a} b={b} p={p}")));
                        }
                        count += 1;
                    }
                }
            }
        }
        Ok((true, format!("{count} products")))
    })();
    cell_or_error(&mut r, id, outcome);
    r
}

/// The Ξ bases of `H_m` for (N, m) in (4, <=4), (5, <=3), (6, <=2): size
/// `dim H_m`, full rank, harmonic. The dimension identity
/// `Σ_{a+b<=m} dim H_{m-a-b}(N-2) = dim H_m(N)` for N = 5..7, m <= 5.
pub fn xi_bases(params: &SuiteParams) -> Report {
    let pairs = params.pairs_or(&[(4, 4), (5, 3), (6, 2)]);
    let jobs: Vec<(usize, u32)> = pairs.into_iter().flat_map(|(n, mm)| (0..=mm).map(move |m| (n, m))).collect();
    let mut parts: Vec<Report> = jobs
        .into_par_iter()
        .map(|(dim, m)| {
            let mut r = Report::new("xi-basis");
            let outcome = (|| -> Result<(bool, String)> {
                let basis = xi_basis(dim, m)?;
                let want = dim_harmonic(dim, m)?;
                let space = Space::new(dim)?;
                let lap = laplacian(&space, LaplacianMode::Direct);
                let polys: Vec<Poly> = basis.iter().map(|(_, p)| p.clone()).collect();
                let harmonic = polys.par_iter().all(|p| lap.apply(p).map(|v| v.is_zero()).unwrap_or(false));
                let rk = rank(&polys);
                let ok = polys.len() as u128 == want && rk == polys.len() && harmonic;
                Ok((ok, format!("{} elements, rank {rk}, dim H_m = {want}, harmonic: {harmonic}", polys.len())))
            })();
            cell_or_error(&mut r, format!("N={dim} m={m} basis of H_m"), outcome);
            r
        })
        .collect();
    let mut r = Report::new("xi-basis");
    let dims = params.dims.clone().map(|d| d.collect()).unwrap_or_else(|| vec![5, 6, 7]);
    for dim in dims {
        for m in 0..=params.deg_or(5) {
            let outcome = (|| -> Result<(bool, String)> {
                let mut sum = 0;
                for s in 0..=m {
                    sum += (s as u128 + 1) * dim_harmonic(dim - 2, m - s)?;
                }
                let want = dim_harmonic(dim, m)?;
                Ok((sum == want, format!("sum {sum}, dim H_m = {want}")))
            })();
            cell_or_error(&mut r, format!("N={dim} m={m} dimension splitting"), outcome);
        }
    }
    parts.push(r);
    gather("xi-basis", parts)
}

