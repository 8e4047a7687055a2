//! Exact scalar arithmetic: rationals, Gaussian rationals, the mode-tagged
//! [`Scalar`], and Bernoulli / Faulhaber tables.

mod bernoulli;
mod gaussian;
mod rational;
mod scalar;

pub use bernoulli::{bernoulli_number, bernoulli_polynomial, faulhaber_sum_poly, BernoulliTable};
pub use gaussian::GaussianRational;
pub use rational::{binomial, checked_div, rational_arith, rational_to_f64, ratio, render_rational, ArithOp, Rational};
pub use scalar::Scalar;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
}
