use crate::algebra::{q_power, Monomial, Poly, Space};
use crate::error::{Error, Result};
use crate::scalar::{qnum, QConvention, QScalar};

use super::LinearOperator;

fn sym(a: u32) -> QScalar {
    qnum(a as i64, QConvention::Symmetric)
}

fn basic(a: u32) -> QScalar {
    qnum(a as i64, QConvention::Basic)
}

/// `Σ_{i=a}^{b} ν_i` over 1-based indices, empty when `a > b`.
fn range_sum(m: &Monomial, a: usize, b: usize) -> i64 {
    (a..=b.min(m.dim())).map(|i| m.exp(i) as i64).sum()
}

/// The q-derivative `∂_k`.
///
/// For `k <= n`: `∂_k x^ν = [ν_k]_q q^{ν_{k+1} + ... + ν_N} x^{ν - ε_k}`.
/// For the middle index of odd `N` the bracket is the basic one. For a
/// primed index `k = κ'` the leading term carries
/// `q^{ν_κ + ν_{k+1} + ... + ν_N}` and is followed by correction terms
/// that trade an inner pair `x_j x_{j'}` (and, for odd `N`, `x_{n+1}^2`)
/// for `x_κ`.
pub fn partial(space: &Space, k: usize) -> Result<LinearOperator> {
    space.check_index(k as i64)?;
    let s = space.clone();
    let dim = space.dim();
    let n = space.half();
    let odd = space.is_odd();
    let dq = QScalar::q() - QScalar::q_pow(-1);
    let one_plus_q = QScalar::one() + QScalar::q();
    Ok(LinearOperator::new(space, Some(-1), move |m| {
        let mut out = Vec::new();
        let nu_k = m.exp(k);
        if k <= n {
            if nu_k > 0 {
                let c = sym(nu_k) * QScalar::q_pow(range_sum(m, k + 1, dim));
                out.push((m.shifted(&[(k, -1)]).unwrap(), c));
            }
        } else if odd && k == n + 1 {
            if nu_k > 0 {
                let c = basic(nu_k) * QScalar::q_pow(range_sum(m, k + 1, dim));
                out.push((m.shifted(&[(k, -1)]).unwrap(), c));
            }
        } else {
            let kap = s.prime(k);
            if nu_k > 0 {
                let e = range_sum(m, k + 1, dim) + m.exp(kap) as i64;
                out.push((m.shifted(&[(k, -1)]).unwrap(), sym(nu_k) * QScalar::q_pow(e)));
            }
            for j in kap + 1..=n {
                let jp = s.prime(j);
                if m.exp(j) > 0 && m.exp(jp) > 0 {
                    let d = range_sum(m, kap, j - 1) + range_sum(m, s.prime(j - 1), dim);
                    let c = sym(m.exp(j)) * sym(m.exp(jp)) * &dq
                        * QScalar::t_pow(s.rho2(kap) - s.rho2(j) + 2 * d);
                    out.push((m.shifted(&[(kap, 1), (j, -1), (jp, -1)]).unwrap(), c));
                }
            }
            let mid = n + 1;
            if odd && m.exp(mid) >= 2 {
                let nm = m.exp(mid);
                let e = range_sum(m, kap, dim) - 2 * nm as i64;
                let c = basic(nm - 1) * basic(nm) * &dq / &one_plus_q * QScalar::t_pow(s.rho2(kap) + 4 + 2 * e);
                out.push((m.shifted(&[(kap, 1), (mid, -2)]).unwrap(), c));
            }
        }
        Poly::from_terms(&s, out)
    }))
}

/// Left multiplication by `x_k`.
pub fn xhat(space: &Space, k: usize) -> Result<LinearOperator> {
    let g = Poly::generator(space, k)?;
    let s = space.clone();
    Ok(LinearOperator::new(space, Some(1), move |m| &g * &Poly::monomial(&s, m.clone())))
}

/// Left multiplication by `Q`.
pub fn qhat(space: &Space) -> LinearOperator {
    qhat_power(space, 1)
}

/// Left multiplication by `Q^k`.
pub fn qhat_power(space: &Space, k: u32) -> LinearOperator {
    let qk = q_power(space, k);
    let s = space.clone();
    LinearOperator::new(space, Some(2 * k as i32), move |m| &qk * &Poly::monomial(&s, m.clone())).memoized()
}

/// How the Laplacian is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaplacianMode {
    /// `Σ_i q^{ρ_i} ∂_i ∂_{i'}` from the derivative operators.
    Composed,
    /// The closed formula on monomials.
    Direct,
}

/// The q-Laplacian `Δ_q`.
pub fn laplacian(space: &Space, mode: LaplacianMode) -> LinearOperator {
    match mode {
        LaplacianMode::Composed => laplacian_composed(space),
        LaplacianMode::Direct => laplacian_direct(space),
    }
}

fn laplacian_composed(space: &Space) -> LinearOperator {
    let parts = (1..=space.dim())
        .map(|i| {
            let di = partial(space, i).unwrap();
            let dip = partial(space, space.prime(i)).unwrap();
            (space.q_rho(i), di.compose(&dip).unwrap())
        })
        .collect();
    let op = LinearOperator::linear_combination(space, parts).unwrap();
    LinearOperator { shift: Some(-2), ..op }
}

fn laplacian_direct(space: &Space) -> LinearOperator {
    let s = space.clone();
    let dim = space.dim();
    let n = space.half();
    let odd = space.is_odd();
    let one_plus = QScalar::one() + QScalar::q_pow(dim as i64 - 2);
    let one_plus_q = QScalar::one() + QScalar::q();
    LinearOperator::new(space, Some(-2), move |m| {
        let tot = m.degree() as i64;
        let mut out = Vec::new();
        if tot < 2 {
            return Poly::zero(&s);
        }
        let pre = &one_plus * QScalar::q_pow(tot - 1);
        for j in 1..=n {
            let jp = s.prime(j);
            if m.exp(j) > 0 && m.exp(jp) > 0 {
                let d = if j > 1 { range_sum(m, 1, j - 1) + range_sum(m, s.prime(j - 1), dim) } else { 0 };
                let c = &pre * sym(m.exp(j)) * sym(m.exp(jp)) * QScalar::t_pow(2 * d - s.rho2(j));
                out.push((m.shifted(&[(j, -1), (jp, -1)]).unwrap(), c));
            }
        }
        let mid = n + 1;
        if odd && m.exp(mid) >= 2 {
            let nm = m.exp(mid);
            let c = &pre * basic(nm - 1) * basic(nm) * QScalar::q_pow(tot - 2 * nm as i64 + 2) / &one_plus_q;
            out.push((m.shifted(&[(mid, -2)]).unwrap(), c));
        }
        Poly::from_terms(&s, out)
    })
}

/// The diagonal operators of the calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diagonal {
    /// `γ x^ν = |ν| x^ν`.
    Gamma,
    /// `c x^ν = q^{|ν|} x^ν`.
    C,
    /// `c^{-1}`.
    CInv,
    /// `q^{s γ}` for an integer `s`, e.g. `q^{-γ}` with `s = -1`.
    QPowGamma(i64),
}

pub fn diagonal(space: &Space, which: Diagonal) -> LinearOperator {
    let eig = move |d: i64| match which {
        Diagonal::Gamma => QScalar::from_int(d),
        Diagonal::C => QScalar::q_pow(d),
        Diagonal::CInv => QScalar::q_pow(-d),
        Diagonal::QPowGamma(s) => QScalar::q_pow(s * d),
    };
    diagonal_by(space, move |m| eig(m.degree() as i64))
}

/// Diagonal operator with an arbitrary eigenvalue rule.
pub fn diagonal_by(space: &Space, eig: impl Fn(&Monomial) -> QScalar + Send + Sync + 'static) -> LinearOperator {
    let s = space.clone();
    LinearOperator::new(space, Some(0), move |m| Poly::term(&s, m.clone(), eig(m)))
}

/// `E = Σ_k x̂_k ∂_k`.
pub fn euler(space: &Space) -> LinearOperator {
    let parts = (1..=space.dim())
        .map(|k| (QScalar::one(), xhat(space, k).unwrap().compose(&partial(space, k).unwrap()).unwrap()))
        .collect();
    let op = LinearOperator::linear_combination(space, parts).unwrap();
    LinearOperator { shift: Some(0), ..op }
}

/// Reject operators that need `N >= 3`.
pub(crate) fn need_rank_two(space: &Space) -> Result<()> {
    if space.dim() < 3 {
        Err(Error::InvalidDimension { n: space.dim(), reason: "needs N >= 3" })
    } else {
        Ok(())
    }
}
