use crate::arith::Scalar;
use crate::exppoly::ExpPoly;

use super::sums::sum_infinite;

/// The value the method assigns to lim_{n→∞} G(n).
#[derive(Debug, Clone, PartialEq)]
pub struct AssignedLimit {
    pub value: Scalar,
}

/// lim G(n) = ∫₋₁⁰ P₁(x) dx for the λ = 1 polynomial P₁; every λ ≠ 1 term
/// contributes 0.
pub fn assigned_limit(g: &ExpPoly) -> AssignedLimit {
    let value = g.polynomial_part().integral_minus_one_to_zero();
    let value = if g.mode().is_exact() { value } else { value.to_float() };
    AssignedLimit { value }
}

/// Limit of the sequence F(1), F(2), … as the sum of its telescoping series
/// F(1) + (F(2) − F(1)) + (F(3) − F(2)) + ….
pub fn seq_limit(f: &ExpPoly) -> AssignedLimit {
    let increments = f - &f.shift(-1);
    let tail = sum_infinite(&increments, 2).value;
    AssignedLimit { value: &f.evaluate(1) + &tail }
}
