use qharmonic::algebra::{q_radius, q_squared_radius, PolyJson};
use qharmonic::report::Report;
use qharmonic::{Poly, QScalar, Space};
use rayon::prelude::*;

use super::{equal, gather, SuiteParams};
use crate::expr::{parse_poly, parse_scalar, poly_from_json};
use crate::random::{random_poly, random_scalar, rng};

const SAMPLES: usize = 200;

/// Associativity, and the star map being an involutive anti-automorphism,
/// on 200 random triples of degree <= 3 for N = 3..6.
pub fn algebra_soundness(params: &SuiteParams) -> Report {
    let deg = params.deg_or(3);
    let parts = params
        .dims_or(3, 6)
        .into_par_iter()
        .map(|dim| {
            let mut r = Report::new("algebra-soundness");
            let space = match Space::new(dim) {
                Ok(s) => s,
                Err(e) => {
                    r.error(format!("N={dim}"), e);
                    return r;
                }
            };
            let mut g = rng(params.seed ^ dim as u64);
            let triples: Vec<[Poly; 3]> = (0..SAMPLES)
                .map(|_| std::array::from_fn(|_| random_poly(&mut g, &space, deg, 3)))
                .collect();
            let (mut assoc, mut anti, mut invol) = (None, None, None);
            for (i, [a, b, c]) in triples.iter().enumerate() {
                if assoc.is_none() && &(a * b) * c != a * &(b * c) {
                    assoc = Some(i);
                }
                if anti.is_none() && (a * b).star() != &b.star() * &a.star() {
                    anti = Some(i);
                }
                if invol.is_none() && a.star().star() != *a {
                    invol = Some(i);
                }
            }
            let what = format!("{SAMPLES} random triples of degree <= {deg}, seed {}", params.seed);
            for (name, bad) in [("associativity", assoc), ("star reverses products", anti), ("star is an involution", invol)] {
                match bad {
                    None => r.check(format!("N={dim} {name}"), true, what.clone()),
                    Some(i) => r.check(format!("N={dim} {name}"), false, format!("fails on sample {i}")),
                }
            }
            r
        })
        .collect();
    gather("algebra-soundness", parts)
}

fn commutes_up_to(a: &Poly, b: &Poly, c: &QScalar) -> bool {
    a * b == (b * a).scale(c)
}

/// Centrality of Q for N = 2..7; the commutation rules of the partial
/// radii Q_j, the splitting of x_i x_{i'} into Q_i and Q_{i+1}, and the
/// product formula for x_1^k x_{1'}^k with k <= 3, for N = 4..6.
pub fn radius_identities(params: &SuiteParams) -> Report {
    let central_dims = params.dims.clone().map(|r| r.collect()).unwrap_or_else(|| (2..=7).collect::<Vec<_>>());
    let mut parts: Vec<Report> = central_dims
        .into_par_iter()
        .map(|dim| {
            let mut r = Report::new("radius-identities");
            let space = Space::new(dim).unwrap();
            let q = q_squared_radius(&space);
            let bad: Vec<usize> = (1..=dim).filter(|&j| !commutes_up_to(&x(&space, j), &q, &QScalar::one())).collect();
            r.check(format!("N={dim} Q is central"), bad.is_empty(), format!("commutes with every generator; failures at {bad:?}"));
            r
        })
        .collect();
    let kmax = params.deg_or(3);
    let more: Vec<Report> = params.dims_or(4, 6).into_par_iter().map(|dim| partial_radii(dim, kmax)).collect();
    parts.extend(more);
    gather("radius-identities", parts)
}

fn x(space: &Space, j: usize) -> Poly {
    Poly::generator(space, j).unwrap()
}

fn partial_radii(dim: usize, kmax: u32) -> Report {
    let mut r = Report::new("radius-identities");
    let space = Space::new(dim).unwrap();
    let n = space.half();
    let qs: Vec<Poly> = (1..=n).map(|j| q_radius(&space, j).unwrap()).collect();
    let mut bad = Vec::new();
    for j in 1..=n {
        for i in 1..=dim {
            let factor = if i < j {
                QScalar::q_pow(2)
            } else if i > space.prime(j) {
                QScalar::q_pow(-2)
            } else {
                QScalar::one()
            };
            if !commutes_up_to(&x(&space, i), &qs[j - 1], &factor) {
                bad.push((i, j));
            }
        }
        for k in 1..=n {
            if !commutes_up_to(&qs[j - 1], &qs[k - 1], &QScalar::one()) {
                bad.push((j, k));
            }
        }
    }
    r.check(format!("N={dim} Q_j commutation rules"), bad.is_empty(), format!("all pairs; failures at {bad:?}"));

    let mut bad = Vec::new();
    for i in 1..n {
        let lhs = &x(&space, i) * &x(&space, space.prime(i));
        let a = QScalar::one() + QScalar::q_pow(dim as i64 - 2 * i as i64);
        let b = QScalar::one() + QScalar::q_pow(dim as i64 - 2 * i as i64 - 2);
        let rhs = (qs[i - 1].scale(&a.inv().unwrap()) - qs[i].scale(&b.inv().unwrap())).scale(&space.q_rho(i));
        if lhs != rhs {
            bad.push(i);
        }
    }
    r.check(format!("N={dim} x_i x_i' from Q_i and Q_(i+1)"), bad.is_empty(), format!("1 <= i < n; failures at {bad:?}"));

    let q1 = qs[0].scale(&(space.q_rho(dim).inv().unwrap() / (QScalar::one() + QScalar::q_pow(dim as i64 - 2))));
    let q2 = qs[1].scale(&(space.q_rho(dim).inv().unwrap() / (QScalar::one() + QScalar::q_pow(dim as i64 - 4))));
    for k in 1..=kmax {
        let lhs = &x(&space, 1).pow(k) * &x(&space, dim).pow(k);
        let mut rhs = Poly::one(&space);
        for i in 0..k {
            rhs = &rhs * &(&q1 - &q2.scale(&QScalar::q_pow(2 * i as i64)));
        }
        equal(&mut r, format!("N={dim} k={k} x_1^k x_1'^k product formula"), &lhs, &rhs, "expanded in the PBW basis");
    }
    r
}

/// Text and JSON round trips on 100 random polynomials and 100 random
/// scalars.
pub fn round_trip(params: &SuiteParams) -> Report {
    let mut r = Report::new("round-trip");
    let dims = params.dims_or(3, 6);
    let deg = params.deg_or(3);
    let mut g = rng(params.seed);
    let (mut text_bad, mut json_bad, mut scalar_bad) = (Vec::new(), Vec::new(), Vec::new());
    for i in 0..100 {
        let space = Space::new(dims[i % dims.len()]).unwrap();
        let p = random_poly(&mut g, &space, deg, 4);
        if parse_poly(&p.to_string(), &space).ok().as_ref() != Some(&p) {
            text_bad.push(p.to_string());
        }
        let json = serde_json::to_string(&p.to_json()).expect("serializable");
        let back = serde_json::from_str::<PolyJson>(&json).ok().and_then(|j| poly_from_json(&j).ok());
        if back.as_ref() != Some(&p) {
            json_bad.push(json);
        }
        let c = random_scalar(&mut g);
        if parse_scalar(&c.to_string()).ok().as_ref() != Some(&c) {
            scalar_bad.push(c.to_string());
        }
    }
    let detail = |bad: &Vec<String>| {
        if bad.is_empty() {
            format!("100 random samples, seed {}", params.seed)
        } else {
            format!("{} failures, first: {}", bad.len(), bad[0])
        }
    };
    r.check("polynomial text round trip", text_bad.is_empty(), detail(&text_bad));
    r.check("polynomial JSON round trip", json_bad.is_empty(), detail(&json_bad));
    r.check("scalar text round trip", scalar_bad.is_empty(), detail(&scalar_bad));
    r
}
