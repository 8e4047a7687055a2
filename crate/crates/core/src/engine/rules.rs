//! Closed-form theorem rules. Each one computes Σ_{u=1}^{∞} f(u) (or a
//! related quantity) without building a primitive, so agreement with
//! [`sum_infinite`] is a meaningful check.

use crate::arith::{Rational, Scalar};
use crate::exppoly::{ExpPoly, Parity, Polynomial};

use super::limits::assigned_limit;
use super::sums::{sum_infinite, SumValue};
use super::EngineError;

/// ε = ±1 in the shift rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// δ = (1 − ε)/2
    fn delta(self) -> i64 {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }
}

fn half() -> Scalar {
    Scalar::from(Rational::new(1.into(), 2.into()))
}

fn in_mode(f: &ExpPoly, g: ExpPoly) -> ExpPoly {
    g.with_mode(f.mode()).expect("exact helper converts to any mode")
}

/// (−1)^{n−1} in the mode of `f`.
pub(crate) fn alternating_sign(f: &ExpPoly) -> ExpPoly {
    in_mode(f, ExpPoly::single(Scalar::from_int(-1), Polynomial::constant(Scalar::from_int(-1))))
}

/// (−1)ⁿ in the mode of `f`.
fn minus_one_pow(f: &ExpPoly) -> ExpPoly {
    in_mode(f, ExpPoly::geometric(Scalar::from_int(-1)))
}

/// Σ_{u=δ}^{t−1+δ} (lim f(n − εu) − f(−εu))
fn boundary_correction(f: &ExpPoly, eps: Sign, t: u32) -> Scalar {
    let e = eps.value();
    let d = eps.delta();
    (d..(t as i64 + d)).fold(Scalar::zero(), |acc, u| {
        let lim = assigned_limit(&f.shift(-e * u)).value;
        &acc + &(&lim - &f.evaluate(-e * u))
    })
}

/// Σ_{u≥1} f(u) = −f(0)/2 for even f, convergent or not.
pub fn rule_even(f: &ExpPoly) -> Result<SumValue, EngineError> {
    if f.parity() != Parity::Even {
        return Err(EngineError::NotEven);
    }
    let value = -&(&f.evaluate(0) * &half());
    Ok(SumValue::from_rule(value, f))
}

/// Quasi-even rule for f(−x) = f(x − εt):
/// Σ f = ½·ε·Σ_{u=δ}^{t−1+δ}(lim f(n − εu) − f(−εu)) − ½·f(0).
/// With t = 0 the correction is empty and this is [`rule_even`].
pub fn rule_quasi_even(f: &ExpPoly, eps: Sign, t: u32) -> Result<SumValue, EngineError> {
    let target = f.shift(-eps.value() * t as i64);
    if !f.reflect().approx_eq(&target) {
        return Err(EngineError::NotQuasiEven);
    }
    let corr = boundary_correction(f, eps, t);
    let signed = if eps == Sign::Plus { corr } else { -&corr };
    let value = &(&signed * &half()) - &(&f.evaluate(0) * &half());
    Ok(SumValue::from_rule(value, f))
}

/// Both sides of Σ_{u≥1} f(u − εt) = Σ_{u≥1} f(u) − ε·Σ_{u=δ}^{t−1+δ}(lim f(n − εu) − f(−εu)),
/// computed independently.
pub fn rule_shift_identity(f: &ExpPoly, eps: Sign, t: u32) -> (Scalar, Scalar) {
    let lhs = sum_infinite(&f.shift(-eps.value() * t as i64), 1).value;
    let corr = boundary_correction(f, eps, t);
    let base = sum_infinite(f, 1).value;
    let rhs = if eps == Sign::Plus { &base - &corr } else { &base + &corr };
    (lhs, rhs)
}

/// Even/odd subseries from A = Σ f(u) and B = Σ (−1)^{u−1} f(u):
/// Σ f(2u) = (A − B)/2 and Σ f(2u − 1) = (A + B)/2 − ½·lim(f(n) − (−1)ⁿ f(n)).
pub fn rule_split(f: &ExpPoly) -> (Scalar, Scalar) {
    let a = sum_infinite(f, 1).value;
    let b = sum_infinite(&(&alternating_sign(f) * f), 1).value;
    let even = &(&a - &b) * &half();
    let lim = assigned_limit(&(f - &(&minus_one_pow(f) * f))).value;
    let odd = &(&(&a + &b) * &half()) - &(&lim * &half());
    (even, odd)
}

/// Σ f(u) recomputed as Σ (f(2u − 1) + f(2u)) + ½·lim(f(n) − (−1)ⁿ f(n)).
///
/// The correction is the limit of the unpaired last term f(n)·[n odd] of
/// the partial sum, which is where the minus sign comes from.
pub fn rule_group(f: &ExpPoly) -> Scalar {
    let pairs = &f.substitute_affine(2, -1) + &f.substitute_affine(2, 0);
    let grouped = sum_infinite(&pairs, 1).value;
    let lim = assigned_limit(&(f - &(&minus_one_pow(f) * f))).value;
    &grouped + &(&lim * &half())
}

/// Σ f = Σ f(2u − 1) + Σ f(2u) + ½·lim(f(n) − (−1)ⁿ f(n)).
pub fn rule_commute(f: &ExpPoly) -> Scalar {
    let odd = sum_infinite(&f.substitute_affine(2, -1), 1).value;
    let even = sum_infinite(&f.substitute_affine(2, 0), 1).value;
    let lim = assigned_limit(&(f - &(&minus_one_pow(f) * f))).value;
    &(&odd + &even) + &(&lim * &half())
}
