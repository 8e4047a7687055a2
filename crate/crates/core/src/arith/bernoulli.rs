use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};

use super::rational::{binomial, Rational};
use super::Scalar;
use crate::exppoly::Polynomial;

/// Memoized Bernoulli numbers in the B₁ = +1/2 convention.
///
/// Values come from Σ_{j=0}^{k} C(k+1, j)·B_j = k+1, which is the usual
/// recurrence with the sign of B₁ flipped. Readers always observe a prefix
/// of the same sequence, so concurrent extension is indistinguishable from
/// serial use.
#[derive(Debug, Default)]
pub struct BernoulliTable {
    values: RwLock<Vec<Rational>>,
}

impl BernoulliTable {
    pub fn new() -> Self {
        BernoulliTable { values: RwLock::new(vec![Rational::one()]) }
    }

    pub fn get(&self, k: usize) -> Rational {
        {
            let values = self.values.read().expect("bernoulli table poisoned");
            if let Some(b) = values.get(k) {
                return b.clone();
            }
        }
        let mut values = self.values.write().expect("bernoulli table poisoned");
        if values.is_empty() {
            values.push(Rational::one());
        }
        while values.len() <= k {
            let m = values.len();
            let mut acc = Rational::from_integer((m as i64 + 1).into());
            for (j, b) in values.iter().enumerate() {
                if !b.is_zero() {
                    acc -= binomial(m as u64 + 1, j as u64) * b;
                }
            }
            let next = acc / Rational::from_integer((m as i64 + 1).into());
            values.push(next);
        }
        values[k].clone()
    }

    /// Number of cached entries.
    pub fn len(&self) -> usize {
        self.values.read().expect("bernoulli table poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn shared_table() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(BernoulliTable::new)
}

/// B_k with B₁ = +1/2.
pub fn bernoulli_number(k: usize) -> Rational {
    shared_table().get(k)
}

/// The power-sum polynomial (1/(k+1))·Σ_{u=0}^{k} C(k+1,u)·B_u·n^{k+1−u},
/// which equals Σ_{u=1}^{n} u^k for every integer n ≥ 1.
pub fn bernoulli_polynomial(k: usize) -> Polynomial {
    let scale = Rational::from_integer((k as i64 + 1).into()).recip();
    let mut coeffs = vec![Rational::zero(); k + 2];
    for u in 0..=k {
        let c = binomial(k as u64 + 1, u as u64) * bernoulli_number(u) * &scale;
        coeffs[k + 1 - u] = c;
    }
    Polynomial::new(coeffs.into_iter().map(Scalar::from).collect())
}

/// Alias of [`bernoulli_polynomial`]; the antidifference consumes it under
/// this name.
pub fn faulhaber_sum_poly(k: usize) -> Polynomial {
    bernoulli_polynomial(k)
}
