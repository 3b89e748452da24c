use qharmonic::algebra::q_power;
use qharmonic::harmonic::xi_basis;
use qharmonic::operators::{
    chevalley, diagonal, diagonal_by, euler, laplacian, partial, qhat, qhat_power, xhat, Diagonal, Generator,
    LaplacianMode, LinearOperator,
};
use qharmonic::report::Report;
use qharmonic::scalar::{qnum, QConvention};
use qharmonic::{Poly, QScalar, Result, Space};
use rayon::prelude::*;

use super::{equal, gather, zero_family, zero_on, SuiteParams};

type Family = Vec<(String, Result<LinearOperator>)>;

fn combo(space: &Space, parts: Vec<(QScalar, Result<LinearOperator>)>) -> Result<LinearOperator> {
    let parts = parts.into_iter().map(|(c, op)| op.map(|op| (c, op))).collect::<Result<Vec<_>>>()?;
    LinearOperator::linear_combination(space, parts)
}

fn comp(a: &LinearOperator, b: &LinearOperator) -> Result<LinearOperator> {
    a.compose(b)
}

fn dq() -> QScalar {
    QScalar::q() - QScalar::q_pow(-1)
}

fn one() -> QScalar {
    QScalar::one()
}

fn per_dim(params: &SuiteParams, suite: &str, f: impl Fn(&Space, u32) -> Report + Sync, deg: u32) -> Report {
    let parts = params
        .dims_or(3, 6)
        .into_par_iter()
        .map(|dim| match Space::new(dim) {
            Ok(space) => f(&space, deg),
            Err(e) => {
                let mut r = Report::new(suite);
                r.error(format!("N={dim}"), e);
                r
            }
        })
        .collect();
    gather(suite, parts)
}

/// The commutation relations among the `∂_k`, and between `∂_k`, `x̂_j`
/// and `c = q^γ`, as zero operators on `A_m`, `m <= 4`, for N = 3..6.
pub fn derivative_relations(params: &SuiteParams) -> Report {
    per_dim(params, "derivative-relations", relations_for, params.deg_or(4))
}

fn relations_for(s: &Space, deg: u32) -> Report {
    let mut r = Report::new("derivative-relations");
    let dim = s.dim();
    let n = s.half();
    let d: Vec<LinearOperator> = (1..=dim).map(|k| partial(s, k).unwrap()).collect();
    let x: Vec<LinearOperator> = (1..=dim).map(|k| xhat(s, k).unwrap()).collect();
    let d = |k: usize| &d[k - 1];
    let x = |k: usize| &x[k - 1];
    let c = diagonal(s, Diagonal::C);
    let p = |j: usize| s.prime(j);

    let mut fam: Family = Vec::new();
    for i in 1..=dim {
        for j in i + 1..=dim {
            if j != p(i) {
                fam.push((
                    format!("i={i} j={j}"),
                    combo(s, vec![(one(), comp(d(i), d(j))), (-QScalar::q_pow(-1), comp(d(j), d(i)))]),
                ));
            }
        }
    }
    zero_family(&mut r, format!("N={dim} d_i d_j = q^-1 d_j d_i for i < j, j != i'"), fam, deg);

    let mut fam: Family = Vec::new();
    for i in 1..n {
        let co = dq() / (QScalar::t_pow(s.rho2(i) - 2) + QScalar::t_pow(2 - s.rho2(i)));
        let mut parts = vec![(one(), comp(d(p(i)), d(i))), (-one(), comp(d(i), d(p(i))))];
        for kk in i + 1..=p(i + 1) {
            parts.push((&co * s.q_rho(kk), comp(d(kk), d(p(kk)))));
        }
        fam.push((format!("i={i}"), combo(s, parts)));
    }
    if !fam.is_empty() {
        zero_family(&mut r, format!("N={dim} d_i' d_i - d_i d_i' through the inner Laplacian, i < n"), fam, deg);
    }

    let mut parts = vec![(one(), comp(d(p(n)), d(n))), (-one(), comp(d(n), d(p(n))))];
    if s.is_odd() {
        parts.push((QScalar::t_pow(1) - QScalar::t_pow(-1), comp(d(n + 1), d(n + 1))));
    }
    zero_on(&mut r, format!("N={dim} d_n' d_n - d_n d_n'"), combo(s, parts), deg);

    let mut fam: Family = Vec::new();
    for k in 1..=dim {
        let dl = i64::from(k == p(k));
        let mut parts = vec![
            (one(), comp(d(k), x(k))),
            (-QScalar::q_pow(dl - 1), comp(x(k), d(k))),
            (-one(), Ok(c.clone())),
        ];
        for j in 1..k {
            parts.push((dq(), comp(x(j), d(j))));
        }
        if k > p(k) {
            parts.push((-dq() * QScalar::t_pow(2 * s.rho2(p(k))), comp(x(p(k)), d(p(k)))));
        }
        fam.push((format!("k={k}"), combo(s, parts)));
    }
    zero_family(&mut r, format!("N={dim} d_k x_k"), fam, deg);

    let mut fam: Family = Vec::new();
    for k in 1..=dim {
        for j in 1..=dim {
            if j == k || j == p(k) {
                continue;
            }
            let mut parts = vec![(one(), comp(d(k), x(j))), (-one(), comp(x(j), d(k)))];
            if k > p(j) {
                parts.push((-dq() * QScalar::t_pow(s.rho2(p(j)) - s.rho2(k)), comp(x(p(k)), d(p(j)))));
            }
            fam.push((format!("k={k} j={j}"), combo(s, parts)));
        }
    }
    zero_family(&mut r, format!("N={dim} d_k x_j for j != k, k'"), fam, deg);

    let mut fam: Family = Vec::new();
    for k in 1..=dim {
        if k != p(k) {
            fam.push((
                format!("d_k x_k' k={k}"),
                combo(s, vec![(one(), comp(d(k), x(p(k)))), (-QScalar::q(), comp(x(p(k)), d(k)))]),
            ));
        }
        fam.push((format!("c x_k k={k}"), combo(s, vec![(one(), comp(&c, x(k))), (-QScalar::q(), comp(x(k), &c))])));
        fam.push((
            format!("c d_k k={k}"),
            combo(s, vec![(one(), comp(&c, d(k))), (-QScalar::q_pow(-1), comp(d(k), &c))]),
        ));
    }
    zero_family(&mut r, format!("N={dim} d_k x_k' = q x_k' d_k, c x_k = q x_k c, c d_k = q^-1 d_k c"), fam, deg);
    r
}

/// The Laplacian composed from derivatives equals its closed formula on
/// `A_m`, `m <= 5`, N = 3..6.
pub fn laplace_equivalence(params: &SuiteParams) -> Report {
    per_dim(
        params,
        "laplace-equivalence",
        |s, deg| {
            let mut r = Report::new("laplace-equivalence");
            let diff = laplacian(s, LaplacianMode::Composed).sub(&laplacian(s, LaplacianMode::Direct));
            zero_on(&mut r, format!("N={} composed Laplacian = closed formula", s.dim()), diff, deg);
            r
        },
        params.deg_or(5),
    )
}

/// `q^{-N+3} [2k][N+2k+2d-2] (1+q^{N-2})^2 / (1+q)^2` with basic brackets.
fn radial_coefficient(dim: usize, k: u32, d: i64, conv: QConvention) -> QScalar {
    let dim = dim as i64;
    let k = k as i64;
    let one_plus = QScalar::one() + QScalar::q_pow(dim - 2);
    QScalar::q_pow(-dim + 3) * qnum(2 * k, conv) * qnum(dim + 2 * k + 2 * d - 2, conv) * one_plus.pow(2)
        / (QScalar::one() + QScalar::q()).pow(2)
}

/// `Δ Q^k - q^{2k} Q^k Δ` on `A_m`, `m <= 4`, and `Δ(Q^k)`, for k <= 3 and
/// N = 3..6. Brackets are basic; one cell confirms that the symmetric
/// reading fails.
pub fn laplace_q_radius(params: &SuiteParams) -> Report {
    let kmax = 3;
    per_dim(
        params,
        "laplace-q-radius",
        move |s, deg| {
            let mut r = Report::new("laplace-q-radius");
            let dim = s.dim();
            let lap = laplacian(s, LaplacianMode::Direct);
            for k in 1..=kmax {
                let qk = qhat_power(s, k);
                let lower = qhat_power(s, k - 1);
                let diag = diagonal_by(s, move |m| radial_coefficient(dim, k, m.degree() as i64, QConvention::Basic));
                let op = combo(
                    s,
                    vec![
                        (one(), comp(&lap, &qk)),
                        (-QScalar::q_pow(2 * k as i64), comp(&qk, &lap)),
                        (-one(), comp(&lower, &diag)),
                    ],
                );
                zero_on(&mut r, format!("N={dim} k={k} Laplacian past Q^k"), op, deg);
            }
            for k in 1..=kmax {
                let got = lap.apply(&q_power(s, k));
                let want = q_power(s, k - 1).scale(&radial_coefficient(dim, k, 0, QConvention::Basic));
                match got {
                    Ok(got) => equal(&mut r, format!("N={dim} k={k} Laplacian of Q^k"), &got, &want, "exact"),
                    Err(e) => r.error(format!("N={dim} k={k} Laplacian of Q^k"), e),
                }
            }
            let got = lap.apply(&q_power(s, 1)).ok();
            let basic = Some(Poly::one(s).scale(&radial_coefficient(dim, 1, 0, QConvention::Basic)));
            let symmetric = Some(Poly::one(s).scale(&radial_coefficient(dim, 1, 0, QConvention::Symmetric)));
            r.check(
                format!("N={dim} bracket convention"),
                got == basic && got != symmetric,
                "brackets read as basic [a] = (1 - q^a)/(1 - q); the symmetric reading disagrees on Q",
            );
            r
        },
        params.deg_or(4),
    )
}

/// The Euler operator `E = Σ x̂_k ∂_k`: its commutation with `x̂_k`, its
/// expression through `c`, `Q̂` and `Δ`, and `E h = [l]_q h` on the Ξ basis
/// of `H_l`, for N = 3..6.
pub fn euler_operator(params: &SuiteParams) -> Report {
    per_dim(
        params,
        "euler-operator",
        |s, deg| {
            let mut r = Report::new("euler-operator");
            let dim = s.dim();
            let di = dim as i64;
            let e = euler(s);
            let q_hat = qhat(s);
            let c = diagonal(s, Diagonal::C);
            let cinv = diagonal(s, Diagonal::CInv);
            let one_plus = QScalar::one() + QScalar::q_pow(di - 2);
            let fam: Family = (1..=dim)
                .map(|k| {
                    let xk = xhat(s, k).unwrap();
                    let dkp = partial(s, s.prime(k)).unwrap();
                    let coeff = dq() / &one_plus * QScalar::t_pow(2 * di - s.rho2(k) - 4);
                    let op = combo(
                        s,
                        vec![
                            (one(), comp(&e, &xk)),
                            (-QScalar::q_pow(-1), comp(&xk, &e)),
                            (-coeff, comp(&q_hat, &dkp)),
                            (-one(), comp(&xk, &c)),
                        ],
                    );
                    (format!("k={k}"), op)
                })
                .collect();
            zero_family(&mut r, format!("N={dim} E x_k = q^-1 x_k E + Q d_k' term + x_k c"), fam, deg.saturating_sub(1));

            let lap = laplacian(s, LaplacianMode::Direct);
            let tail = dq() / one_plus.pow(2) * QScalar::q_pow(di - 1);
            let op = combo(
                s,
                vec![
                    (one(), Ok(e.clone())),
                    (-dq().inv().unwrap(), Ok(c.clone())),
                    (dq().inv().unwrap(), Ok(cinv.clone())),
                    (-tail, LinearOperator::chain(&[q_hat.clone(), lap, cinv])),
                ],
            );
            zero_on(&mut r, format!("N={dim} E through c, Q and the Laplacian"), op, deg);

            for l in 0..=deg.min(3) {
                let id = format!("N={dim} l={l} E h = [l]_q h on harmonics");
                let eig = qnum(l as i64, QConvention::Symmetric);
                match xi_basis(dim, l) {
                    Ok(basis) => {
                        let bad = basis.iter().find(|(_, h)| e.apply(h).ok() != Some(h.scale(&eig)));
                        match bad {
                            None => r.check(id, true, format!("{} basis elements", basis.len())),
                            Some((label, _)) => r.check(id, false, format!("fails at {label}")),
                        }
                    }
                    Err(err) => r.error(id, err),
                }
            }
            r
        },
        params.deg_or(4),
    )
}

/// `[Δ, g] = [Q̂, g] = 0` for every Chevalley generator on `A_m`, `m <= 4`,
/// N = 3..6.
pub fn equivariance(params: &SuiteParams) -> Report {
    per_dim(
        params,
        "equivariance",
        |s, deg| {
            let mut r = Report::new("equivariance");
            let lap = laplacian(s, LaplacianMode::Direct);
            let q_hat = qhat(s);
            let gens = Generator::all(s);
            let mk = |target: &LinearOperator| -> Family {
                gens.iter()
                    .map(|&g| (g.to_string(), chevalley(s, g).and_then(|op| target.commutator(&op))))
                    .collect()
            };
            zero_family(&mut r, format!("N={} Laplacian commutes with U_q(so_N)", s.dim()), mk(&lap), deg);
            zero_family(&mut r, format!("N={} Q commutes with U_q(so_N)", s.dim()), mk(&q_hat), deg);
            r
        },
        params.deg_or(4),
    )
}
