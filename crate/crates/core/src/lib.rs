//! Asymptotic invariants of regular subsets of free groups: frequency
//! generating functions, Cesaro densities and λ-measures, computed exactly.
//!
//! The numeric core is generic over [`scalar::Scalar`]; the aliases below
//! fix it to arbitrary-precision rationals.

pub mod automaton;
pub mod decompose;
pub mod exactalg;
pub mod freegroup;
pub mod measures;
pub mod oracle;
pub mod scalar;

pub use num_rational::BigRational as Rational;

pub type Poly = exactalg::Polynomial<Rational>;
pub type RatFunc = exactalg::RationalFunction<Rational>;
