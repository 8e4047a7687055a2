use crate::antidiff::{antidifference, Primitive};
use crate::arith::{binomial, Scalar};
use crate::exppoly::{Convergence, ExpPoly, Polynomial};
use crate::oracle::OracleReport;

use super::limits::assigned_limit;
use super::order::OrderedZRange;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Classification {
    ConvergentClassical,
    AssignedDivergent,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::ConvergentClassical => "ConvergentClassical",
            Classification::AssignedDivergent => "AssignedDivergent",
        }
    }
}

/// A sum together with how it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct SumValue {
    pub value: Scalar,
    pub classification: Classification,
    /// The primitive behind the value, when the antidifference pipeline
    /// produced it.
    pub primitive: Option<Primitive>,
    pub oracle: Option<OracleReport>,
}

impl SumValue {
    pub(crate) fn from_rule(value: Scalar, f: &ExpPoly) -> SumValue {
        SumValue { value, classification: classify(f), primitive: None, oracle: None }
    }
}

fn classify(f: &ExpPoly) -> Classification {
    match f.classify_convergence() {
        Convergence::SummableClassically => Classification::ConvergentClassical,
        Convergence::Divergent => Classification::AssignedDivergent,
    }
}

/// Σ_{u=a}^{∞} f(u) = lim F(n+1) − F(a).
pub fn sum_infinite(f: &ExpPoly, a: i64) -> SumValue {
    let primitive = antidifference(f);
    let limit = assigned_limit(&primitive.function().shift(1)).value;
    let value = &limit - &primitive.evaluate(a);
    SumValue { value, classification: classify(f), primitive: Some(primitive), oracle: None }
}

/// Σ_{u=a}^{b} f(u) over Z_{a,b} = F(b+1) − F(a), for any integers a, b.
///
/// When a ≤ b in the usual order this is the ordinary finite sum. Otherwise
/// the range passes through the point at infinity and the value is the one
/// the method assigns to the two infinite tails.
pub fn sum_finite(f: &ExpPoly, a: i64, b: i64) -> SumValue {
    let primitive = antidifference(f);
    let value = &primitive.evaluate(b + 1) - &primitive.evaluate(a);
    let classification = if OrderedZRange::finite(a, b).is_finite_set()
        || (classify(f) == Classification::ConvergentClassical
            && classify(&f.reflect()) == Classification::ConvergentClassical)
    {
        Classification::ConvergentClassical
    } else {
        Classification::AssignedDivergent
    };
    SumValue { value, classification, primitive: Some(primitive), oracle: None }
}

/// Sum over the whole line, Σ_{u=anchor}^{anchor−1} f(u).
pub fn sum_over_z(f: &ExpPoly, anchor: i64) -> Scalar {
    sum_finite(f, anchor, anchor - 1).value
}

/// h(n) = Σ_{k=0}^{n} f(k)·g(n−k) as an exp-poly in n.
///
/// For f-term λᵏp(k) and g-term μⁿ⁻ᵏq(n−k), expand q(n−k) = Σ_j nʲ·r_j(k)
/// with r_j(k) = Σ_i q_i·C(i,j)·(−k)^{i−j}; each inner sum over k is then a
/// finite sum of an exp-poly in k.
pub fn cauchy_product(f: &ExpPoly, g: &ExpPoly) -> ExpPoly {
    let mode = f.mode();
    let mut acc = ExpPoly::zero(mode);
    for (lambda, p) in f.terms() {
        for (mu, qpoly) in g.terms() {
            let ratio_base = lambda * &mu.inv().expect("nonzero base");
            let Some(deg) = qpoly.degree() else { continue };
            let mut inner_total = ExpPoly::zero(mode);
            for j in 0..=deg {
                let mut r = Polynomial::zero();
                for i in j..=deg {
                    let c = &qpoly.coeff(i) * &Scalar::from(binomial(i as u64, j as u64));
                    let sign = if (i - j) % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
                    r = &r + &Polynomial::monomial(i - j).scale(&(&c * &sign));
                }
                let summand = ExpPoly::new(mode, [(ratio_base.clone(), p * &r)]).expect("same mode");
                let prim = antidifference(&summand);
                let partial = prim.function().shift(1)
                    - ExpPoly::constant(prim.evaluate(0)).with_mode(mode).expect("mode");
                let nj = ExpPoly::power(j).with_mode(mode).expect("mode");
                inner_total = &inner_total + &(&nj * &partial);
            }
            let outer = ExpPoly::geometric(mu.clone()).with_mode(mode).expect("mode");
            acc = &acc + &(&outer * &inner_total);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from(ratio(n, d))
    }

    fn poly(cs: &[i64]) -> Polynomial {
        Polynomial::new(cs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    #[test]
    fn sum_infinite_examples() {
        let one = ExpPoly::constant(Scalar::one());
        assert_eq!(sum_infinite(&one, 1).value, q(-1, 2));
        assert_eq!(sum_infinite(&ExpPoly::power(1), 1).value, q(-1, 12));
        // (−1)^{u−1}·u
        let alt_n = ExpPoly::single(Scalar::from_int(-1), poly(&[0, -1]));
        assert_eq!(sum_infinite(&alt_n, 1).value, q(1, 4));
        assert_eq!(sum_infinite(&ExpPoly::geometric(Scalar::from_int(2)), 0).value, Scalar::from_int(-1));
        assert_eq!(sum_infinite(&ExpPoly::geometric(Scalar::from_int(-2)), 0).value, q(1, 3));
        assert_eq!(sum_infinite(&one, 1).classification, Classification::AssignedDivergent);
        assert_eq!(
            sum_infinite(&ExpPoly::geometric(q(1, 2)), 1).classification,
            Classification::ConvergentClassical
        );
    }

    #[test]
    fn sum_finite_examples() {
        let s = sum_finite(&ExpPoly::power(1), 1, 4);
        assert_eq!(s.value, Scalar::from_int(10));
        assert_eq!(s.classification, Classification::ConvergentClassical);
        let f = &ExpPoly::power(3) + &ExpPoly::geometric(q(2, 3));
        for a in -5..5 {
            assert!(sum_finite(&f, a, a - 1).value.is_zero());
        }
        // [2, −1] ∪ [0, 0]
        let one = ExpPoly::constant(Scalar::one());
        let wrap = sum_finite(&one, 2, 0);
        assert_eq!(wrap.value, Scalar::from_int(-1));
        assert_eq!(wrap.classification, Classification::AssignedDivergent);
        let split = &sum_finite(&one, 2, -1).value + &sum_finite(&one, 0, 0).value;
        assert_eq!(sum_finite(&one, 2, -1).value, Scalar::from_int(-2));
        assert_eq!(split, wrap.value);
    }

    #[test]
    fn whole_line_vanishes() {
        assert!(sum_over_z(&ExpPoly::power(3), 0).is_zero());
        assert!(sum_over_z(&ExpPoly::geometric(Scalar::from_int(2)), 7).is_zero());
        assert!(sum_over_z(&ExpPoly::zero(crate::exppoly::Mode::Exact), -3).is_zero());
    }

    #[test]
    fn cauchy_product_matches_convolution() {
        let f = &ExpPoly::single(Scalar::from_int(-1), poly(&[1, 2])) + &ExpPoly::geometric(q(1, 3));
        let g = &ExpPoly::power(2) + &ExpPoly::single(Scalar::from_int(2), poly(&[-1]));
        let h = cauchy_product(&f, &g);
        for n in 0..=12 {
            let brute = (0..=n).fold(Scalar::zero(), |acc, k| &acc + &(&f.evaluate(k) * &g.evaluate(n - k)));
            assert_eq!(h.evaluate(n), brute, "n = {n}");
        }
    }

    #[test]
    fn grandi_squared() {
        let alt = ExpPoly::geometric(Scalar::from_int(-1));
        let h = cauchy_product(&alt, &alt);
        assert_eq!(h, ExpPoly::single(Scalar::from_int(-1), poly(&[1, 1])));
        let lhs = sum_infinite(&h, 0).value;
        let grandi = sum_infinite(&alt, 0).value;
        assert_eq!(lhs, &grandi * &grandi);
        assert_eq!(lhs, q(1, 4));
    }
}
