//! Exact arbitrary-precision arithmetic: rationals, univariate polynomials,
//! rational functions, cyclotomic fields, and rational linear algebra.

pub mod cyclotomic;
pub mod linalg;
pub mod poly;
pub mod ratfun;
pub mod rational;

pub use cyclotomic::{cyclotomic_polynomial, euler_totient, CyclotomicNumber};
pub use linalg::{canonical_span, rational_nullspace, RatMatrix};
pub use poly::UniPoly;
pub use ratfun::RationalFunction;
pub use rational::{format_rational, parse_rational, GaussianRational, Rational};
