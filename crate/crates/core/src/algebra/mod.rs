//! Exact scalars: arbitrary-precision rationals and sparse multivariate
//! polynomials over them. Every equality test downstream reduces to
//! [`Poly::is_zero`], which is decidable with no tolerance.

mod parse;
mod poly;
mod rational;

pub use poly::{Monomial, ParameterSpace, Poly};
pub use rational::{format_rational, parse_rational, rat, Rational};
