//! The `U_q(sl_2)` action `ω` on the algebra, which commutes with
//! `U_q(so_N)`:
//!
//! `ω(k) = q^{N/2} q^γ`, `ω(e) = Q̂`, `ω(f) = −Δ_q q^{−γ} q^{N/2} / (1+q^{N−2})^2`.
//!
//! On `Q^r h` with `h ∈ H_m` the triple acts as a lowest-weight module of
//! weight `m + N/2`.

use crate::algebra::{q_power, Poly, Space};
use crate::error::Result;
use crate::harmonic::{dim_full, dim_harmonic, xi_basis};
use crate::operators::{diagonal, diagonal_by, laplacian, qhat, Diagonal, LaplacianMode, LinearOperator};
use crate::report::Report;
use crate::scalar::QScalar;

/// The images `ω(k)`, `ω(k^{-1})`, `ω(e)`, `ω(f)`.
#[derive(Clone, Debug)]
pub struct OmegaTriple {
    pub k_op: LinearOperator,
    pub k_inverse: LinearOperator,
    pub e_op: LinearOperator,
    pub f_op: LinearOperator,
}

pub fn omega(space: &Space) -> OmegaTriple {
    let half_n = space.dim() as i64;
    let k_op = diagonal_by(space, move |m| QScalar::t_pow(half_n + 2 * m.degree() as i64));
    let k_inverse = diagonal_by(space, move |m| QScalar::t_pow(-half_n - 2 * m.degree() as i64));
    let e_op = qhat(space);
    let c = -QScalar::t_pow(half_n) / (QScalar::one() + QScalar::q_pow(half_n - 2)).pow(2);
    let f_op = laplacian(space, LaplacianMode::Direct)
        .compose(&diagonal(space, Diagonal::QPowGamma(-1)))
        .expect("same space")
        .scaled(c);
    OmegaTriple { k_op, k_inverse, e_op, f_op }
}

/// `[x]_q` for half-integer `x = x2 / 2`.
fn sym_half(x2: i64) -> QScalar {
    (QScalar::t_pow(x2) - QScalar::t_pow(-x2)) / (QScalar::q() - QScalar::q_pow(-1))
}

/// The three defining relations of `U_q(sl_2)` as zero operators on
/// `A_m`, `m <= deg_max`.
pub fn verify_sl2(space: &Space, deg_max: u32) -> Report {
    let w = omega(space);
    let range = format!("A_m, m <= {deg_max}");
    let mut report = Report::new("dual-pair");
    let n = space.dim();
    let ke = w.k_op.compose(&w.e_op).unwrap().sub(&w.e_op.compose(&w.k_op).unwrap().scaled(QScalar::q_pow(2))).unwrap();
    report.operator_identity(format!("N={n} ke = q^2 ek"), ke.check_zero_on(deg_max), &range);
    let kf = w.k_op.compose(&w.f_op).unwrap().sub(&w.f_op.compose(&w.k_op).unwrap().scaled(QScalar::q_pow(-2))).unwrap();
    report.operator_identity(format!("N={n} kf = q^-2 fk"), kf.check_zero_on(deg_max), &range);
    let dq_inv = (QScalar::q() - QScalar::q_pow(-1)).inv().unwrap();
    let ef = w
        .e_op
        .commutator(&w.f_op)
        .unwrap()
        .sub(&w.k_op.sub(&w.k_inverse).unwrap().scaled(dq_inv))
        .unwrap();
    report.operator_identity(format!("N={n} ef - fe = (k - k^-1)/(q - q^-1)"), ef.check_zero_on(deg_max), &range);
    report
}

/// On `Q^r h` for every `h` in the basis of `H_m` and `r <= r_max`: `ω(e)`
/// raises `r`, `ω(f)` lowers it with coefficient `−[r]_q[r+m+N/2−1]_q`, and
/// `ω(k)` has eigenvalue `q^{2r+m+N/2}`.
pub fn lowest_weight_check(space: &Space, m: u32, r_max: u32) -> Result<Report> {
    let w = omega(space);
    let n2 = space.dim() as i64;
    let basis = xi_basis(space.dim(), m)?;
    let mut report = Report::new("dual-pair");
    for r in 0..=r_max {
        let (mut e_ok, mut f_ok, mut k_ok) = (None, None, None);
        let ri = r as i64;
        let f_coeff = -sym_half(2 * ri) * sym_half(2 * ri + 2 * m as i64 + n2 - 2);
        let k_eig = QScalar::t_pow(4 * ri + 2 * m as i64 + n2);
        for (label, h) in &basis {
            let v = &q_power(space, r) * h;
            let up = &q_power(space, r + 1) * h;
            let down = if r == 0 { Poly::zero(space) } else { (&q_power(space, r - 1) * h).scale(&f_coeff) };
            if e_ok.is_none() && w.e_op.apply(&v)? != up {
                e_ok = Some(label.to_string());
            }
            if f_ok.is_none() && w.f_op.apply(&v)? != down {
                f_ok = Some(label.to_string());
            }
            if k_ok.is_none() && w.k_op.apply(&v)? != v.scale(&k_eig) {
                k_ok = Some(label.to_string());
            }
        }
        let n = space.dim();
        let count = basis.len();
        let mut cell = |what: &str, bad: Option<String>, formula: String| match bad {
            None => report.check(format!("N={n} m={m} r={r} {what}"), true, format!("{formula} on {count} basis elements")),
            Some(l) => report.check(format!("N={n} m={m} r={r} {what}"), false, format!("{formula} fails at {l}")),
        };
        cell("omega(e)", e_ok, "Q^r h -> Q^(r+1) h".into());
        cell("omega(f)", f_ok, format!("coefficient {f_coeff}"));
        cell("omega(k)", k_ok, format!("eigenvalue {k_eig}"));
    }
    Ok(report)
}

/// `dim A_M = Σ_{m <= M, m ≡ M (2)} dim H_m` for `M <= max_total`.
pub fn dimension_bookkeeping(dim: usize, max_total: u32) -> Result<Report> {
    let mut report = Report::new("dual-pair");
    for total in 0..=max_total {
        let full = dim_full(dim, total)?;
        let mut sum = 0;
        for m in (total % 2..=total).step_by(2) {
            sum += dim_harmonic(dim, m)?;
        }
        report.check(format!("N={dim} M={total} dimensions"), full == sum, format!("dim A_M = {full}, sum of dim H_m = {sum}"));
    }
    Ok(report)
}
