//! Closed forms for the classical families. Each is computed from its own
//! formula, never through the antidifference pipeline.

use crate::arith::{bernoulli_number, ratio, Rational, Scalar};

use super::EngineError;

/// Σ_{u≥1} (a₁ + (u−1)d) = (5d − 6a₁)/12.
///
/// Any rational d is accepted; negative d goes beyond the usual statement of
/// the formula but agrees with the generic pipeline.
pub fn arith_series(a1: &Rational, d: &Rational) -> Rational {
    (d * Rational::from_integer(5.into()) - a1 * Rational::from_integer(6.into())) / Rational::from_integer(12.into())
}

/// Σ_{u≥1} (−1)^{u−1}(a₁ + (u−1)d) = (2a₁ − d)/4.
pub fn alt_arith_series(a1: &Rational, d: &Rational) -> Rational {
    (a1 * Rational::from_integer(2.into()) - d) / Rational::from_integer(4.into())
}

/// Σ_{u≥0} gᵘ = 1/(1 − g), g ≠ 1.
pub fn geom_series(g: &Scalar) -> Result<Scalar, EngineError> {
    (&Scalar::one() - g)
        .inv()
        .filter(|_| !g.is_one())
        .ok_or_else(|| EngineError::Pole("geometric ratio g = 1".into()))
}

/// ζ(−k) = −B_{k+1}/(k+1)
pub fn zeta_neg(k: usize) -> Rational {
    -bernoulli_number(k + 1) * ratio(1, k as i64 + 1)
}

/// η(−k) = (2^{k+1} − 1)·B_{k+1}/(k+1)
pub fn eta_neg(k: usize) -> Rational {
    let factor = Rational::from_integer((num_bigint::BigInt::from(1) << (k + 1)) - 1);
    factor * bernoulli_number(k + 1) * ratio(1, k as i64 + 1)
}
