//! Exact-arithmetic library for Selmer's multidimensional continued
//! fraction algorithms: the subtractive (SSA) and multiplicative (MSA)
//! step maps on the ordered simplex, their convergent matrices,
//! periodicity detection, and eigenvalue-based convergence and
//! approximation analysis of periodic expansions.
//!
//! All decisions (signs, orderings, digits, periodicity, polygon
//! containment) are exact; floating point never participates.

pub mod convergents;
pub mod geometry;
pub mod interval;
pub mod maps;
pub mod numfield;
pub mod periodic;
pub mod poly;
pub mod rational;
pub mod sampling;

pub use interval::RatInterval;
pub use numfield::{IsolatingInterval, NumFieldError, NumberField, NumberFieldElement};
pub use poly::Polynomial;
pub use rational::Rational;
