use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use dashmap::DashMap;

use super::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::scalar::QScalar;

/// One rewriting rule `x_b x_a -> Σ c x_i x_j` for `b > a` (0-based).
pub(super) type SwapRule = Vec<(QScalar, usize, usize)>;

/// Product of a normal monomial with one generator, as normal terms.
pub(super) type Terms = Arc<Vec<(Monomial, QScalar)>>;

/// The dimension-dependent data of `E^N_q`: `N`, `n = ⌊N/2⌋`, the
/// ρ-vector and the pairing `j ↦ j' = N - j + 1`.
///
/// A `Space` is a cheap handle; all handles for the same `N` share one
/// set of multiplication caches. Public indices are 1-based like the
/// generators `x_1, ..., x_N`.
#[derive(Clone)]
pub struct Space(Arc<SpaceInner>);

pub(super) struct SpaceInner {
    dim: usize,
    rho2: Vec<i64>,
    pub(super) swaps: Vec<Vec<SwapRule>>,
    pub(super) mulgen: DashMap<(Monomial, usize), Terms>,
    pub(super) q_powers: DashMap<(usize, u32), Poly>,
}

fn registry() -> &'static Mutex<HashMap<usize, Space>> {
    static REG: OnceLock<Mutex<HashMap<usize, Space>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Space {
    /// The space of dimension `N >= 2`.
    pub fn new(dim: usize) -> Result<Space> {
        if dim < 2 {
            return Err(Error::InvalidDimension { n: dim, reason: "need N >= 2" });
        }
        let mut reg = registry().lock().unwrap();
        Ok(reg.entry(dim).or_insert_with(|| Space::build(dim)).clone())
    }

    fn build(dim: usize) -> Space {
        let n = dim / 2;
        let odd = dim % 2 == 1;
        // First half of 2ρ, then the middle zero for odd N, then the mirror.
        let mut rho2: Vec<i64> = (0..n as i64)
            .map(|i| if odd { 2 * (n as i64 - i) - 1 } else { 2 * (n as i64 - 1 - i) })
            .collect();
        if odd {
            rho2.push(0);
        }
        for j in (0..n).rev() {
            rho2.push(-rho2[j]);
        }
        let mut inner =
            SpaceInner { dim, rho2, swaps: Vec::new(), mulgen: DashMap::new(), q_powers: DashMap::new() };
        inner.swaps = build_swaps(&inner);
        Space(Arc::new(inner))
    }

    pub(super) fn inner(&self) -> &SpaceInner {
        &self.0
    }

    /// `N`.
    pub fn dim(&self) -> usize {
        self.0.dim
    }

    /// `n = ⌊N/2⌋`.
    pub fn half(&self) -> usize {
        self.0.dim / 2
    }

    pub fn is_odd(&self) -> bool {
        self.0.dim % 2 == 1
    }

    /// `2ρ_j` for `1 <= j <= N`.
    pub fn rho2(&self, j: usize) -> i64 {
        self.0.rho2[j - 1]
    }

    /// The whole vector `(2ρ_1, ..., 2ρ_N)`.
    pub fn rho2_vec(&self) -> &[i64] {
        &self.0.rho2
    }

    /// `j' = N - j + 1`.
    pub fn prime(&self, j: usize) -> usize {
        self.0.dim + 1 - j
    }

    /// `q^{ρ_j}` as a scalar.
    pub fn q_rho(&self, j: usize) -> QScalar {
        QScalar::t_pow(self.rho2(j))
    }

    /// Check a 1-based generator index.
    pub fn check_index(&self, j: i64) -> Result<usize> {
        if j >= 1 && j as usize <= self.0.dim {
            Ok(j as usize)
        } else {
            Err(Error::IndexOutOfRange { index: j, max: self.0.dim })
        }
    }

    pub fn same(&self, other: &Space) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::SpaceMismatch { left: self.dim(), right: other.dim() })
        }
    }

    /// All monomials of total degree `deg`, in increasing graded-lex order.
    pub fn monomials(&self, deg: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.dim()];
        fill(&mut cur, 0, deg, &mut out);
        out.sort();
        out
    }

    /// All monomials of degree at most `deg`.
    pub fn monomials_up_to(&self, deg: u32) -> Vec<Monomial> {
        (0..=deg).flat_map(|d| self.monomials(d)).collect()
    }
}

fn fill(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(Monomial::new(cur.clone()));
        return;
    }
    for a in 0..=left {
        cur[pos] = a;
        fill(cur, pos + 1, left - a, out);
    }
}

/// Rewriting rules for every misordered adjacent pair `x_b x_a`, `b > a`.
fn build_swaps(s: &SpaceInner) -> Vec<Vec<SwapRule>> {
    let dim = s.dim;
    let n = dim / 2;
    let odd = dim % 2 == 1;
    let p = |j: usize| dim - 1 - j;
    let q = QScalar::q();
    let q_inv = QScalar::q_pow(-1);
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for b in 0..dim {
        for a in 0..b {
            let rule = if b != p(a) {
                vec![(q_inv.clone(), a, b)]
            } else if a + 1 == n && odd {
                // x_{n'} x_n = x_n x_{n'} + (q^{1/2} - q^{-1/2}) x_{n+1}^2
                vec![(QScalar::one(), a, b), (QScalar::t_pow(1) - QScalar::t_pow(-1), n, n)]
            } else if a + 1 == n {
                vec![(QScalar::one(), a, b)]
            } else {
                // x_{a'} x_a = x_a x_{a'} + (q - q^{-1}) / (q^{ρ_a - 1} + q^{-ρ_a + 1})
                //              * Σ_{j = a+1}^{(a+1)'} q^{ρ_{j'}} x_j x_{j'}
                let r = s.rho2[a];
                let coef = (&q - &q_inv) / (QScalar::t_pow(r - 2) + QScalar::t_pow(2 - r));
                let mut rule = vec![(QScalar::one(), a, b)];
                for j in a + 1..=p(a + 1) {
                    rule.push((&coef * QScalar::t_pow(s.rho2[p(j)]), j, p(j)));
                }
                rule
            };
            table[b][a] = rule;
        }
    }
    table
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.dim() == other.dim()
    }
}

impl Eq for Space {}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Space(N = {}, 2rho = {:?})", self.dim(), self.rho2_vec())
    }
}
