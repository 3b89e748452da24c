//! Exact harmonic analysis on the quantum Euclidean space `E^N_q`.
//!
//! All coefficients are elements of `Q(t)` with `t = q^{1/2}`, so every
//! identity is checked as an exact equality.

pub mod algebra;
pub mod dualpair;
pub mod error;
pub mod harmonic;
pub mod linalg;
pub mod operators;
pub mod report;
pub mod scalar;
pub mod sphere;

pub use error::{Error, Result};
pub use algebra::{Monomial, Poly, Space};
pub use scalar::{QConvention, QScalar};
