//! Exact scalar and polynomial arithmetic.
//!
//! Every quantity in the crate is an integer or a rational number, so nothing
//! here touches floating point. [`Rational`] is a reduced big-integer fraction,
//! [`UniPoly`] is a dense univariate polynomial over it and [`MultiPoly`] is a
//! sparse polynomial in the four homogeneous coordinates `z0..z3` of `P^3`.

mod multipoly;
mod rational;
mod unipoly;

pub use multipoly::{monomials_of_degree, multipoly_gradient, multipoly_mul, Monomial, MultiPoly};
pub(crate) use rational::serde_text;
pub use rational::{fmt_rational, int, ratio, to_i64, Rational};
pub use unipoly::{derivative, poly_gcd, UniPoly};
