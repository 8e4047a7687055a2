//! Solving F(n+1) − F(n) = f(n) inside the exponential-polynomial class.

use thiserror::Error;

use crate::arith::{binomial, faulhaber_sum_poly, Scalar};
use crate::exppoly::{ExpPoly, Polynomial};

/// Sample points used to certify a primitive on construction.
const CHECK_RANGE: std::ops::RangeInclusive<i64> = -10..=10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AntidiffError {
    #[error("F(n+1) - F(n) != f(n) at n = {0}")]
    DeltaMismatch(i64),
    #[error("F(n+1) - F(n) != f as exponential polynomials")]
    NotDifference,
}

/// An exp-poly F together with the f it is a primitive of.
#[derive(Debug, Clone, PartialEq)]
pub struct Primitive {
    primitive: ExpPoly,
    source: ExpPoly,
}

impl Primitive {
    /// Certifies ΔF = f before accepting the pair: symbolically when both
    /// sides are exact, otherwise at n ∈ −10..10.
    pub fn new(primitive: ExpPoly, source: ExpPoly) -> Result<Self, AntidiffError> {
        if primitive.mode().is_exact() && source.mode().is_exact() {
            return if verify_delta(&primitive, &source) {
                Ok(Primitive { primitive, source })
            } else {
                Err(AntidiffError::NotDifference)
            };
        }
        let tol = primitive.mode().tolerance().max(source.mode().tolerance());
        for n in CHECK_RANGE {
            let (hi, lo) = (primitive.evaluate(n + 1), primitive.evaluate(n));
            let delta = &hi - &lo;
            let expected = source.evaluate(n);
            let scale = [hi, lo, expected.clone()]
                .iter()
                .fold(1.0_f64, |m, s| m.max(s.to_complex().norm()));
            if !delta.approx_eq(&expected, tol * scale * 1e3) {
                return Err(AntidiffError::DeltaMismatch(n));
            }
        }
        Ok(Primitive { primitive, source })
    }

    /// F
    pub fn function(&self) -> &ExpPoly {
        &self.primitive
    }

    /// f
    pub fn source(&self) -> &ExpPoly {
        &self.source
    }

    pub fn evaluate(&self, n: i64) -> Scalar {
        self.primitive.evaluate(n)
    }

    /// F + c; still a primitive of the same f.
    pub fn perturbed(&self, c: &Scalar) -> Primitive {
        let shifted = &self.primitive + &ExpPoly::constant(c.clone()).with_mode(self.primitive.mode()).expect("constant");
        Primitive { primitive: shifted, source: self.source.clone() }
    }
}

/// The canonical primitive of `f`.
///
/// * λ = 1 part Σ c_k·n^k becomes Σ c_k·S_k(n − 1), with S_k the power-sum
///   polynomial; hence F(1) = 0 on this part.
/// * λ ≠ 1 part λⁿ·p(n) becomes λⁿ·q(n) with λ·q(n+1) − q(n) = p(n), solved
///   by back-substitution from the top degree (diagonal λ − 1).
pub fn antidifference(f: &ExpPoly) -> Primitive {
    let mode = f.mode();
    let mut terms = Vec::with_capacity(f.terms().len());
    for (base, poly) in f.terms() {
        if base.is_one() {
            terms.push((Scalar::one(), power_sum_primitive(poly)));
        } else {
            terms.push((base.clone(), solve_geometric(base, poly)));
        }
    }
    let primitive = ExpPoly::new(mode, terms).expect("primitive stays in the source mode");
    Primitive::new(primitive, f.clone()).expect("antidifference construction is exact")
}

/// Σ c_k·S_k(n − 1)
fn power_sum_primitive(p: &Polynomial) -> Polynomial {
    let mut acc = Polynomial::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let s = faulhaber_sum_poly(k).compose_affine(&Scalar::one(), &Scalar::from_int(-1));
        acc = &acc + &s.scale(c);
    }
    acc
}

/// q with λ·q(n+1) − q(n) = p(n). Coefficient of nⁱ:
/// (λ − 1)·q_i + λ·Σ_{j>i} C(j, i)·q_j = p_i.
fn solve_geometric(lambda: &Scalar, p: &Polynomial) -> Polynomial {
    let Some(d) = p.degree() else {
        return Polynomial::zero();
    };
    let diag_inv = (lambda - &Scalar::one()).inv().expect("λ ≠ 1 on this path");
    let mut q = vec![Scalar::zero(); d + 1];
    for i in (0..=d).rev() {
        let mut rhs = p.coeff(i);
        for (j, qj) in q.iter().enumerate().skip(i + 1) {
            let c = Scalar::from(binomial(j as u64, i as u64));
            rhs = &rhs - &(&(lambda * &c) * qj);
        }
        q[i] = &rhs * &diag_inv;
    }
    Polynomial::new(q)
}

/// True iff F(n+1) − F(n) = f as canonical exp-polys (symbolic, not sampled).
pub fn verify_delta(primitive: &ExpPoly, f: &ExpPoly) -> bool {
    match primitive.shift(1).checked_sub(primitive) {
        Ok(delta) => delta.approx_eq(f),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn poly(cs: &[i64]) -> Polynomial {
        Polynomial::new(cs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    #[test]
    fn ones_give_n_minus_one() {
        let f = ExpPoly::constant(Scalar::one());
        let prim = antidifference(&f);
        assert_eq!(prim.function(), &ExpPoly::from_polynomial(poly(&[-1, 1])));
    }

    #[test]
    fn grandi_primitive() {
        // f = (−1)^{n−1} = −(−1)ⁿ  →  F = (−1)ⁿ/2
        let f = ExpPoly::single(Scalar::from_int(-1), poly(&[-1]));
        let prim = antidifference(&f);
        assert_eq!(
            prim.function(),
            &ExpPoly::single(Scalar::from_int(-1), Polynomial::constant(Scalar::from(ratio(1, 2))))
        );
    }

    #[test]
    fn alternating_naturals_primitive() {
        // f = −(−1)ⁿ·n  →  F = (−1)ⁿ(2n − 1)/4
        let f = ExpPoly::single(Scalar::from_int(-1), poly(&[0, -1]));
        let prim = antidifference(&f);
        let expected =
            ExpPoly::single(Scalar::from_int(-1), Polynomial::from_rationals([ratio(-1, 4), ratio(1, 2)]));
        assert_eq!(prim.function(), &expected);
        for n in 0..=5 {
            assert_eq!(&expected.evaluate(n + 1) - &expected.evaluate(n), f.evaluate(n));
        }
    }

    #[test]
    fn verify_delta_examples() {
        let grandi_term = ExpPoly::single(Scalar::from_int(-1), poly(&[-1]));
        let grandi_prim = ExpPoly::single(Scalar::from_int(-1), Polynomial::constant(Scalar::from(ratio(1, 2))));
        assert!(verify_delta(&grandi_prim, &grandi_term));
        assert!(verify_delta(&ExpPoly::power(2), &ExpPoly::from_polynomial(poly(&[1, 2]))));
        assert!(!verify_delta(&ExpPoly::power(2), &ExpPoly::from_polynomial(poly(&[0, 2]))));
    }

    #[test]
    fn bad_primitive_is_rejected() {
        let err = Primitive::new(ExpPoly::power(2), ExpPoly::power(1)).unwrap_err();
        assert_eq!(err, AntidiffError::NotDifference);
        let float = |f: ExpPoly| f.with_mode(crate::exppoly::Mode::float()).unwrap();
        let err = Primitive::new(float(ExpPoly::power(2)), float(ExpPoly::power(1))).unwrap_err();
        assert!(matches!(err, AntidiffError::DeltaMismatch(_)));
    }

    #[test]
    fn float_mode_primitive() {
        let lam = Scalar::float(0.5f64.cos(), 0.5f64.sin());
        let f = ExpPoly::single(lam, poly(&[1, 2, 3])).with_mode(crate::exppoly::Mode::float()).unwrap();
        let prim = antidifference(&f);
        assert!(verify_delta(prim.function(), &f));
    }
}
