//! Linear operators on the coordinate algebra.
//!
//! Provides:
//! - [`LinearOperator`]: a rule on basis monomials, extended linearly, with
//!   sum, scaling, composition, commutator and memoization
//! - [`partial`], [`xhat`], [`qhat`], [`laplacian`], [`diagonal`],
//!   [`chevalley`], [`euler`]: the concrete operators
//!
//! Two operators are compared only by applying them to every basis
//! monomial of a graded range ([`LinearOperator::check_zero_on`]).

mod calculus;
mod chevalley;

pub use calculus::*;
pub use chevalley::*;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use rayon::prelude::*;

use crate::algebra::{accumulate, Monomial, Poly, Space};
use crate::error::Result;
use crate::scalar::QScalar;

type Action = dyn Fn(&Monomial) -> Poly + Send + Sync;

/// A linear map on the algebra given by its values on basis monomials.
#[derive(Clone)]
pub struct LinearOperator {
    space: Space,
    action: Arc<Action>,
    shift: Option<i32>,
}

/// A basis monomial on which an operator identity fails, with the nonzero
/// value found there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub monomial: Monomial,
    pub value: Poly,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "on {} gives {}", self.monomial, self.value)
    }
}

impl LinearOperator {
    /// Operator with the given monomial rule. `shift`, when given, is the
    /// degree change of every output term.
    pub fn new(
        space: &Space,
        shift: Option<i32>,
        action: impl Fn(&Monomial) -> Poly + Send + Sync + 'static,
    ) -> Self {
        LinearOperator { space: space.clone(), action: Arc::new(action), shift }
    }

    pub fn zero(space: &Space) -> Self {
        let s = space.clone();
        Self::new(space, None, move |_| Poly::zero(&s))
    }

    pub fn identity(space: &Space) -> Self {
        let s = space.clone();
        Self::new(space, Some(0), move |m| Poly::monomial(&s, m.clone()))
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn degree_shift(&self) -> Option<i32> {
        self.shift
    }

    /// Value on one basis monomial.
    pub fn on_monomial(&self, m: &Monomial) -> Poly {
        (self.action)(m)
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        self.space.same(p.space())?;
        Ok(self.apply_unchecked(p))
    }

    fn apply_unchecked(&self, p: &Poly) -> Poly {
        let mut acc = BTreeMap::new();
        for (m, c) in p.terms() {
            let img = (self.action)(m);
            for (m2, c2) in img.terms() {
                accumulate(&mut acc, m2.clone(), c * c2);
            }
        }
        Poly::from_terms(&self.space, acc)
    }

    /// `c · self`.
    pub fn scaled(&self, c: QScalar) -> Self {
        let inner = self.clone();
        Self::new(&self.space, self.shift, move |m| inner.on_monomial(m).scale(&c))
    }

    /// `Σ c_i A_i`.
    pub fn linear_combination(space: &Space, parts: Vec<(QScalar, LinearOperator)>) -> Result<Self> {
        for (_, op) in &parts {
            space.same(&op.space)?;
        }
        let shifts: Vec<Option<i32>> = parts.iter().map(|(_, op)| op.shift).collect();
        let shift = match shifts.first() {
            Some(&s) if shifts.iter().all(|&t| t == s) => s,
            None => Some(0),
            _ => None,
        };
        let s = space.clone();
        Ok(Self::new(space, shift, move |m| {
            let mut acc = BTreeMap::new();
            for (c, op) in &parts {
                for (m2, c2) in op.on_monomial(m).terms() {
                    accumulate(&mut acc, m2.clone(), c * c2);
                }
            }
            Poly::from_terms(&s, acc)
        }))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::linear_combination(&self.space, vec![(QScalar::one(), self.clone()), (QScalar::one(), other.clone())])
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Self::linear_combination(&self.space, vec![(QScalar::one(), self.clone()), (QScalar::from_int(-1), other.clone())])
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.space.same(&other.space)?;
        let (outer, inner) = (self.clone(), other.clone());
        let shift = match (self.shift, other.shift) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Ok(Self::new(&self.space, shift, move |m| outer.apply_unchecked(&inner.on_monomial(m))))
    }

    /// Compose a chain `A_1 ∘ A_2 ∘ ... ∘ A_r`.
    pub fn chain(ops: &[LinearOperator]) -> Result<Self> {
        let (last, rest) = ops.split_last().expect("chain of at least one operator");
        rest.iter().rev().try_fold(last.clone(), |acc, op| op.compose(&acc))
    }

    /// `[A, B] = A∘B − B∘A`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// Same operator, caching the value on every monomial it sees.
    pub fn memoized(&self) -> Self {
        let inner = self.clone();
        let cache: Arc<DashMap<Monomial, Poly>> = Arc::new(DashMap::new());
        Self::new(&self.space, self.shift, move |m| {
            if let Some(v) = cache.get(m) {
                return v.value().clone();
            }
            let v = inner.on_monomial(m);
            cache.insert(m.clone(), v.clone());
            v
        })
    }

    /// Images of all monomials of degree `deg`, in increasing graded-lex
    /// order of the inputs.
    pub fn images(&self, deg: u32) -> Vec<Poly> {
        let basis = self.space.monomials(deg);
        basis.par_iter().map(|m| self.on_monomial(m)).collect()
    }

    /// First basis monomial of degree `<= max_deg` (in graded-lex order)
    /// on which the operator is nonzero.
    pub fn check_zero_on(&self, max_deg: u32) -> std::result::Result<(), Counterexample> {
        self.check_zero_on_range(0, max_deg)
    }

    pub fn check_zero_on_range(&self, min_deg: u32, max_deg: u32) -> std::result::Result<(), Counterexample> {
        let basis: Vec<Monomial> = (min_deg..=max_deg).flat_map(|d| self.space.monomials(d)).collect();
        let bad = basis.par_iter().map(|m| (m, self.on_monomial(m))).find_first(|(_, v)| !v.is_zero());
        match bad {
            None => Ok(()),
            Some((m, v)) => Err(Counterexample { monomial: m.clone(), value: v }),
        }
    }

    /// Check that every output term of a degree-`m` monomial has degree
    /// `m + shift`, for `m <= max_deg`.
    pub fn check_degree_shift(&self, max_deg: u32) -> bool {
        let Some(shift) = self.shift else { return true };
        self.space.monomials_up_to(max_deg).par_iter().all(|m| {
            let target = m.degree() as i64 + shift as i64;
            self.on_monomial(m).terms().all(|(m2, _)| m2.degree() as i64 == target)
        })
    }
}

impl fmt::Debug for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearOperator(N = {}, shift = {:?})", self.space.dim(), self.shift)
    }
}
