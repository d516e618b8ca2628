//! Exact arithmetic over ℚ in a fixed alphabet of indeterminates: Laurent
//! polynomials, reduced rational functions and one-sided Laurent expansion.

mod gcd;
mod monomial;
mod poly;
mod rational;
mod sample;
mod series;

pub use gcd::gcd;
pub use monomial::{Monomial, Var, NVARS};
pub use poly::{rat, ratio, LaurentPoly, Rational};
pub use rational::{binomial, q_minus_qinv, q_plus_qinv, qpow, RationalFunction};
pub use sample::Sampler;
pub use series::{expand, Direction, LaurentSeries, Window};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot expand: {0}")]
    Expansion(String),
}
