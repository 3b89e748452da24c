//! Named verification suites.
//!
//! Every suite checks exact identities and returns a [`Report`]; the
//! default parameters of each suite are the ones listed in its doc
//! comment. `--N` and `--deg` override the dimension range and the degree
//! bound, `--seed` fixes every random sample.

mod algebra;
mod calculus;
mod harmonic;
mod sphere;

use std::ops::RangeInclusive;

use qharmonic::operators::LinearOperator;
use qharmonic::report::Report;
use qharmonic::Result;
use rayon::prelude::*;

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    pub dims: Option<RangeInclusive<usize>>,
    pub deg: Option<u32>,
    pub seed: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { dims: None, deg: None, seed: DEFAULT_SEED }
    }
}

impl SuiteParams {
    fn dims_or(&self, lo: usize, hi: usize) -> Vec<usize> {
        self.dims.clone().unwrap_or(lo..=hi).collect()
    }

    fn deg_or(&self, d: u32) -> u32 {
        self.deg.unwrap_or(d)
    }

    /// `(N, m_max)` pairs: the given defaults, or the full product when
    /// the user overrides either bound.
    fn pairs_or(&self, defaults: &[(usize, u32)]) -> Vec<(usize, u32)> {
        if self.dims.is_none() && self.deg.is_none() {
            return defaults.to_vec();
        }
        let lo = defaults.iter().map(|p| p.0).min().unwrap_or(3);
        let hi = defaults.iter().map(|p| p.0).max().unwrap_or(3);
        let deg = self.deg_or(defaults.iter().map(|p| p.1).min().unwrap_or(2));
        self.dims_or(lo, hi).into_iter().map(|n| (n, deg)).collect()
    }
}

type SuiteFn = fn(&SuiteParams) -> Report;

/// Suite names in the order `verify all` runs them.
pub const SUITES: &[(&str, SuiteFn)] = &[
    ("algebra-soundness", algebra::algebra_soundness),
    ("radius-identities", algebra::radius_identities),
    ("derivative-relations", calculus::derivative_relations),
    ("laplace-equivalence", calculus::laplace_equivalence),
    ("laplace-q-radius", calculus::laplace_q_radius),
    ("euler-operator", calculus::euler_operator),
    ("equivariance", calculus::equivariance),
    ("projector", harmonic::projector),
    ("decomposition", harmonic::decomposition),
    ("closed-forms", harmonic::closed_forms),
    ("zonal", harmonic::zonal_polynomials),
    ("xi-basis", harmonic::xi_bases),
    ("sphere", sphere::sphere),
    ("dual-pair", sphere::dual_pair),
    ("round-trip", algebra::round_trip),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

/// Run one suite, or every suite for `"all"`. `None` for an unknown name.
pub fn run_suite(name: &str, params: &SuiteParams) -> Option<Vec<Report>> {
    if name == "all" {
        return Some(SUITES.par_iter().map(|(_, f)| f(params)).collect());
    }
    SUITES.iter().find(|(n, _)| *n == name).map(|(_, f)| vec![f(params)])
}

/// Record that an operator vanishes on `A_m`, `m <= max_deg`.
pub(crate) fn zero_on(report: &mut Report, id: String, op: Result<LinearOperator>, max_deg: u32) {
    match op {
        Ok(op) => report.operator_identity(id, op.check_zero_on(max_deg), &format!("A_m, m <= {max_deg}")),
        Err(e) => report.error(id, e),
    }
}

/// Record that every operator of a family vanishes on `A_m`,
/// `m <= max_deg`, naming the first member that does not.
pub(crate) fn zero_family(report: &mut Report, id: String, family: Vec<(String, Result<LinearOperator>)>, max_deg: u32) {
    let count = family.len();
    let outcome: Vec<std::result::Result<(), String>> = family
        .into_par_iter()
        .map(|(label, op)| match op {
            Ok(op) => op.check_zero_on(max_deg).map_err(|c| format!("{label}: nonzero {c}")),
            Err(e) => Err(format!("{label}: error: {e}")),
        })
        .collect();
    match outcome.into_iter().find_map(|r| r.err()) {
        None => report.check(id, true, format!("{count} operators zero on A_m, m <= {max_deg}")),
        Some(why) => report.check(id, false, why),
    }
}

/// Record an equality, printing both sides on failure.
pub(crate) fn equal<T: PartialEq + std::fmt::Display>(report: &mut Report, id: String, got: &T, want: &T, what: &str) {
    if got == want {
        report.check(id, true, what.to_string());
    } else {
        report.check(id, false, format!("{what}: got {got}, expected {want}"));
    }
}

/// Collect parallel per-item reports in input order.
pub(crate) fn gather(suite: &str, parts: Vec<Report>) -> Report {
    let mut out = Report::new(suite);
    for p in parts {
        out.append(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_known() {
        let names = suite_names();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        assert!(run_suite("no-such-suite", &SuiteParams::default()).is_none());
    }

    #[test]
    fn parameter_overrides() {
        let p = SuiteParams { dims: Some(3..=4), deg: Some(2), seed: 1 };
        assert_eq!(p.dims_or(5, 6), vec![3, 4]);
        assert_eq!(p.pairs_or(&[(4, 4), (5, 3)]), vec![(3, 2), (4, 2)]);
        let d = SuiteParams::default();
        assert_eq!(d.pairs_or(&[(4, 4), (5, 3)]), vec![(4, 4), (5, 3)]);
    }

    #[test]
    fn false_identities_are_reported() {
        use qharmonic::operators::partial;
        use qharmonic::{QScalar, Space};
        let s = Space::new(3).unwrap();
        let (d1, d2) = (partial(&s, 1).unwrap(), partial(&s, 2).unwrap());
        let wrong = d1.compose(&d2).unwrap().sub(&d2.compose(&d1).unwrap().scaled(QScalar::q()));
        let mut r = Report::new("t");
        zero_family(&mut r, "wrong".into(), vec![("d1 d2".into(), wrong)], 3);
        assert!(!r.ok());
        assert!(r.cells[0].detail.starts_with("d1 d2: nonzero on"));
        let mut r = Report::new("t");
        equal(&mut r, "x".into(), &1, &2, "ints");
        assert_eq!(r.cells[0].detail, "ints: got 1, expected 2");
    }

    #[test]
    fn every_suite_passes_on_small_parameters() {
        let p = SuiteParams { dims: Some(4..=5), deg: Some(2), seed: 3 };
        for (name, f) in SUITES {
            let r = f(&p);
            assert!(!r.cells.is_empty(), "{name} is empty");
            assert!(r.ok(), "{r}");
            assert_eq!(r.suite, *name);
        }
    }
}
