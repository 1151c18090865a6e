//! Exact Laurent-polynomial and rational-function arithmetic over ℚ.

mod gcd;
mod matrix;
mod poly;
mod rational;

pub use gcd::poly_gcd;
pub use matrix::{determinant, identity, mat_mul, PolyMatrix};
pub use poly::{q, q_frac, Exponents, LaurentPoly, Vars, Q};
pub use rational::{MonomialForm, RationalFn};
