use num_bigint::BigInt;

use crate::arith::{Rational, Scalar};
use crate::exppoly::ExpPoly;

use super::limits::assigned_limit;

/// lim F(n+1) − lim F(n) = lim f(n) with f = F(n+1) − F(n).
pub fn check_extended_regularity(primitive: &ExpPoly) -> bool {
    let shifted = primitive.shift(1);
    let f = &shifted - primitive;
    let lhs = &assigned_limit(&shifted).value - &assigned_limit(primitive).value;
    let rhs = assigned_limit(&f).value;
    if primitive.mode().is_exact() {
        lhs == rhs
    } else {
        lhs.approx_eq(&rhs, primitive.mode().tolerance())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FactorialValue {
    Value(Rational),
    Pole { order: u32, residue: Rational },
}

/// The product ∏_{u=1}^{a} u extended to every integer: a! for a ≥ 0, and a
/// simple pole with residue (−1)^{n−1}/(n−1)! at a = −n.
pub fn factorial_ext(a: i64) -> FactorialValue {
    if a >= 0 {
        let v: BigInt = (1..=a).map(BigInt::from).product();
        return FactorialValue::Value(Rational::from_integer(v));
    }
    let n = a.unsigned_abs();
    let fact: BigInt = (1..n).map(BigInt::from).product();
    let sign = if (n - 1).is_multiple_of(2) { 1 } else { -1 };
    FactorialValue::Pole { order: 1, residue: Rational::new(BigInt::from(sign), fact) }
}

impl FactorialValue {
    pub fn value(&self) -> Option<Scalar> {
        match self {
            FactorialValue::Value(v) => Some(Scalar::from(v.clone())),
            FactorialValue::Pole { .. } => None,
        }
    }
}
