use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::t_poly;
use crate::algebra::{Monomial, Poly, Space};
use crate::error::{Error, Result};

/// Label of a basis element `Ξ` of `H_m`.
///
/// `mvec[j]`, `mpvec[j]` are the exponents peeled off at window `j`
/// (variables `x_{j+1} .. x_{(j+1)'}`). `tail` is `k` for even `N`
/// (`x_n^k`, `1` or `x_{n'}^{-k}`) and `σ ∈ {0, 1}` for odd `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HarmonicLabel {
    #[serde(rename = "N")]
    pub dim: usize,
    pub m: u32,
    pub mvec: Vec<u32>,
    pub mpvec: Vec<u32>,
    pub tail: i64,
}

impl HarmonicLabel {
    /// Residual degree entering window `j`.
    fn residual(&self, j: usize) -> u32 {
        self.m - self.mvec[..j].iter().sum::<u32>() - self.mpvec[..j].iter().sum::<u32>()
    }

    fn is_valid(&self) -> bool {
        let pairs = (self.dim - 1) / 2;
        if self.mvec.len() != pairs || self.mpvec.len() != pairs {
            return false;
        }
        let used: u32 = self.mvec.iter().chain(&self.mpvec).sum();
        let rest = self.tail.unsigned_abs() as u32;
        let tail_ok = if self.dim % 2 == 1 { (0..=1).contains(&self.tail) } else { true };
        tail_ok && used + rest == self.m
    }
}

impl fmt::Display for HarmonicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.mvec.iter().zip(&self.mpvec).map(|(a, b)| format!("{a},{b}")).collect();
        let tail = if self.dim % 2 == 1 { "s" } else { "k" };
        write!(f, "[{}; {tail}={}]", pairs.join("; "), self.tail)
    }
}

/// All labels of the basis of `H_m`, lexicographic in
/// `(m_1, m'_1, m_2, m'_2, ..., tail)`.
pub fn xi_labels(dim: usize, m: u32) -> Result<Vec<HarmonicLabel>> {
    if dim < 2 {
        return Err(Error::InvalidDimension { n: dim, reason: "needs N >= 2" });
    }
    let mut out = Vec::new();
    let mut pairs = Vec::new();
    collect_labels(dim, m, m, &mut pairs, &mut out);
    Ok(out)
}

fn collect_labels(dim: usize, m: u32, left: u32, pairs: &mut Vec<(u32, u32)>, out: &mut Vec<HarmonicLabel>) {
    let label = |tail: i64, pairs: &[(u32, u32)]| HarmonicLabel {
        dim,
        m,
        mvec: pairs.iter().map(|p| p.0).collect(),
        mpvec: pairs.iter().map(|p| p.1).collect(),
        tail,
    };
    let window = dim - 2 * pairs.len();
    match window {
        1 => {
            if left <= 1 {
                out.push(label(left as i64, pairs));
            }
        }
        2 => {
            if left == 0 {
                out.push(label(0, pairs));
            } else {
                out.push(label(-(left as i64), pairs));
                out.push(label(left as i64, pairs));
            }
        }
        _ => {
            for a in 0..=left {
                for b in 0..=left - a {
                    pairs.push((a, b));
                    collect_labels(dim, m, left - a - b, pairs, out);
                    pairs.pop();
                }
            }
        }
    }
}

/// The basis element with the given label: the left-to-right product of
/// the t-polynomials of the shrinking windows and the tail monomial.
pub fn xi_element(label: &HarmonicLabel) -> Result<Poly> {
    if label.dim < 2 || !label.is_valid() {
        return Err(Error::InvalidArgument(format!("not a valid label for N = {}: {label}", label.dim)));
    }
    let dim = label.dim;
    let space = Space::new(dim)?;
    let mut out = Poly::one(&space);
    for (j, (&a, &b)) in label.mvec.iter().zip(&label.mpvec).enumerate() {
        let m_j = label.residual(j);
        let t = t_poly(dim - 2 * j, m_j, a, b, m_j - a - b)?;
        out = &out * &t.embed(&space)?;
    }
    let mut nu = vec![0; dim];
    let n = dim / 2;
    if dim % 2 == 1 {
        nu[n] = label.tail as u32;
    } else if label.tail > 0 {
        nu[n - 1] = label.tail as u32;
    } else {
        nu[n] = label.tail.unsigned_abs() as u32;
    }
    Ok(&out * &Poly::monomial(&space, Monomial::new(nu)))
}

/// The labelled basis of `H_m`.
pub fn xi_basis(dim: usize, m: u32) -> Result<Vec<(HarmonicLabel, Poly)>> {
    xi_labels(dim, m)?
        .into_par_iter()
        .map(|l| {
            let p = xi_element(&l)?;
            Ok((l, p))
        })
        .collect()
}
