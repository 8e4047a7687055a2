#![allow(dead_code)]

use divsum::arith::{ratio, GaussianRational, Rational, Scalar};
use divsum::exppoly::{ExpPoly, Mode, Polynomial};

/// SplitMix64; deterministic so failures reproduce.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in lo..=hi.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as i64
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        &xs[self.range(0, xs.len() as i64 - 1) as usize]
    }

    pub fn rational(&mut self, num: i64, den: i64) -> Rational {
        ratio(self.range(-num, num), self.range(1, den))
    }

    pub fn nonzero_rational(&mut self, num: i64, den: i64) -> Rational {
        loop {
            let r = self.rational(num, den);
            if r != ratio(0, 1) {
                return r;
            }
        }
    }
}

pub fn q(n: i64, d: i64) -> Scalar {
    Scalar::from(ratio(n, d))
}

pub fn gauss(re: Rational, im: Rational) -> Scalar {
    Scalar::Exact(GaussianRational::new(re, im))
}

/// Bases covering λ = 1, roots of unity, |λ| < 1, |λ| > 1 and a
/// non-root-of-unity point on the unit circle.
pub fn base_pool() -> Vec<Scalar> {
    vec![
        q(1, 1),
        q(1, 1),
        q(-1, 1),
        q(2, 1),
        q(-2, 1),
        q(1, 2),
        q(-1, 3),
        q(3, 1),
        gauss(ratio(0, 1), ratio(1, 1)),
        gauss(ratio(0, 1), ratio(-1, 1)),
        gauss(ratio(3, 5), ratio(4, 5)),
        gauss(ratio(1, 2), ratio(1, 2)),
    ]
}

pub fn random_poly(rng: &mut Rng, max_degree: i64) -> Polynomial {
    let deg = rng.range(0, max_degree);
    Polynomial::from_rationals((0..=deg).map(|_| rng.rational(5, 4)))
}

pub fn random_exp_poly(rng: &mut Rng) -> ExpPoly {
    let pool = base_pool();
    let count = rng.range(1, 3);
    let terms: Vec<_> = (0..count).map(|_| (rng.pick(&pool).clone(), random_poly(rng, 3))).collect();
    ExpPoly::new(Mode::Exact, terms).expect("exact terms")
}

/// Random real polynomial as an exp-poly with the single base 1.
pub fn random_polynomial_exp(rng: &mut Rng, max_degree: i64) -> ExpPoly {
    ExpPoly::from_polynomial(random_poly(rng, max_degree))
}

/// h(2x + εt) for an even h: satisfies f(−x) = f(x − εt).
pub fn random_quasi_even(rng: &mut Rng, eps: i64, t: u32) -> ExpPoly {
    random_even(rng).substitute_affine(2, eps * t as i64)
}

/// Σ c·(λⁿ + λ⁻ⁿ)·p(n²)
pub fn random_even(rng: &mut Rng) -> ExpPoly {
    let pool = base_pool();
    let mut acc = ExpPoly::zero(Mode::Exact);
    for _ in 0..rng.range(1, 2) {
        let lambda = rng.pick(&pool).clone();
        let sym = &ExpPoly::geometric(lambda.clone()) + &ExpPoly::geometric(lambda.inv().unwrap());
        let deg = rng.range(0, 2) as usize;
        let even_poly = Polynomial::from_rationals(
            (0..=2 * deg).map(|k| if k % 2 == 0 { rng.rational(5, 4) } else { ratio(0, 1) }),
        );
        acc = &acc + &(&sym * &ExpPoly::from_polynomial(even_poly));
    }
    acc
}

pub fn alternating() -> ExpPoly {
    ExpPoly::single(q(-1, 1), Polynomial::constant(q(-1, 1)))
}

pub fn to_f64(s: &Scalar) -> f64 {
    s.to_complex().re
}
