//! Σ_{u≥1} of cos uθ, (−1)^{u−1} cos uθ and (−1)^{u−1} u^{2k−1} sin uθ via the
//! conjugate exponential pair λ = e^{±iθ}.

use std::f64::consts::PI;

use num_traits::Zero;

use crate::arith::{ratio, GaussianRational, Rational, Scalar};
use crate::exppoly::{ExpPoly, Mode, Polynomial};

use super::sums::{sum_infinite, SumValue};
use super::EngineError;

/// Default comparison tolerance for trig sums, whose values are O(1).
pub const TRIG_TOLERANCE: f64 = 1e-9;

/// Bases closer than this to a pole are rejected as ill-conditioned.
const POLE_PROXIMITY: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum Angle {
    /// r·π
    PiMultiple(Rational),
    Radians(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigVariant {
    Cos,
    AltCos,
    /// (−1)^{u−1} u^{2k−1} sin uθ
    SinFamily(u32),
}

impl Angle {
    pub fn radians(&self) -> f64 {
        match self {
            Angle::PiMultiple(r) => crate::arith::rational_to_f64(r) * PI,
            Angle::Radians(x) => *x,
        }
    }

    /// e^{iθ}, exact when θ is a multiple of π/2.
    pub fn unit(&self) -> Scalar {
        if let Angle::PiMultiple(r) = self {
            let twice = r * Rational::from_integer(2.into());
            if twice.is_integer() {
                let quarter: num_bigint::BigInt = (twice.to_integer() % 4 + 4) % 4;
                let q: i64 = quarter.try_into().expect("reduced mod 4");
                let (re, im) = [(1, 0), (0, 1), (-1, 0), (0, -1)][q as usize];
                return Scalar::Exact(GaussianRational::new(ratio(re, 1), ratio(im, 1)));
            }
        }
        let t = self.radians();
        Scalar::float(t.cos(), t.sin())
    }
}

/// The summand as an exp-poly in u.
pub fn trig_term(angle: &Angle, variant: TrigVariant) -> ExpPoly {
    term_at(angle.unit(), variant)
}

/// A Gaussian rational exactly on the unit circle near e^{iθ}, from the
/// rational parametrisation in t = tan(θ/2) (in cot(θ/2) when |t| > 1, so
/// θ = π is not at t = ∞). t is replaced by a convergent of its continued
/// fraction with denominator at most 2^20, keeping the exact arithmetic
/// cheap while |λ − e^{iθ}| stays around 1e−12.
fn circle_point(theta: f64) -> GaussianRational {
    let half = theta / 2.0;
    let (t, flip) = if half.cos().abs() >= half.sin().abs() { (half.tan(), false) } else { (1.0 / half.tan(), true) };
    let t = best_rational(t, 1 << 20);
    let one = Rational::from_integer(1.into());
    let denom = &one + &t * &t;
    let re = (&one - &t * &t) / &denom;
    let im = (&t + &t) / &denom;
    if flip {
        GaussianRational::new(-re, im)
    } else {
        GaussianRational::new(re, im)
    }
}

/// Last continued-fraction convergent of x (|x| ≤ 1) with denominator ≤ max_den.
fn best_rational(x: f64, max_den: i64) -> Rational {
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    loop {
        let a = r.floor();
        if a.abs() > max_den as f64 {
            break;
        }
        let (h2, k2) = (a as i64 * h1 + h0, a as i64 * k1 + k0);
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    ratio(h1, k1)
}

fn term_at(lambda: Scalar, variant: TrigVariant) -> ExpPoly {
    let conj = lambda.conj();
    let half = Scalar::from(ratio(1, 2));
    let terms = match variant {
        TrigVariant::Cos => vec![
            (lambda, Polynomial::constant(half.clone())),
            (conj, Polynomial::constant(half)),
        ],
        TrigVariant::AltCos => {
            let c = -&half;
            vec![(-&lambda, Polynomial::constant(c.clone())), (-&conj, Polynomial::constant(c))]
        }
        TrigVariant::SinFamily(k) => {
            // −u^{2k−1}·((−λ)ᵘ − (−λ̄)ᵘ)/(2i) = (i/2)·u^{2k−1}·((−λ)ᵘ − (−λ̄)ᵘ)
            let c = &Scalar::i() * &half;
            let mono = Polynomial::monomial(2 * k as usize - 1);
            vec![(-&lambda, mono.scale(&c)), (-&conj, mono.scale(&-&c))]
        }
    };
    let mode = if terms.iter().all(|(b, _)| b.is_exact()) { Mode::Exact } else { Mode::float() };
    let terms = terms.into_iter().map(|(b, p)| if mode.is_exact() { (b, p) } else { (b.to_float(), p.to_float()) });
    ExpPoly::new(mode, terms).expect("terms share a mode")
}

fn check_pole(base: &Scalar, what: &str) -> Result<(), EngineError> {
    let near = match base {
        Scalar::Exact(g) => g.is_one(),
        Scalar::Float(z) => (1.0 - z).norm() < POLE_PROXIMITY,
    };
    if near {
        Err(EngineError::Pole(format!("{what} has base 1")))
    } else {
        Ok(())
    }
}

/// Σ_{u≥1} of the chosen family at θ. The real part is reported; an
/// imaginary residue above [`TRIG_TOLERANCE`] is an error.
pub fn trig_series(angle: &Angle, variant: TrigVariant) -> Result<SumValue, EngineError> {
    let lambda = angle.unit();
    match variant {
        TrigVariant::Cos => check_pole(&lambda, "cos u*theta")?,
        TrigVariant::AltCos => check_pole(&-&lambda, "(-1)^(u-1) cos u*theta")?,
        TrigVariant::SinFamily(k) => {
            if k == 0 {
                return Err(EngineError::Pole("sin family needs k >= 1".into()));
            }
        }
    }
    // Float bases lose everything near the removable singularities of the
    // primitive (the sin family at λ = −1 divides by (1 + λ)^{2k}). Summing
    // exactly at a rational point of the circle avoids the cancellation; the
    // result is then rounded once.
    let rounded = !lambda.is_exact();
    let f = if rounded {
        term_at(Scalar::Exact(circle_point(angle.radians())), variant)
    } else {
        trig_term(angle, variant)
    };
    let mut sum = sum_infinite(&f, 1);
    if rounded {
        sum.value = sum.value.to_float();
        sum.primitive = sum.primitive.and_then(|p| {
            let float = Mode::float();
            let prim = p.function().with_mode(float).ok()?;
            let src = p.source().with_mode(float).ok()?;
            crate::antidiff::Primitive::new(prim, src).ok()
        });
    }
    sum.value = match &sum.value {
        Scalar::Exact(g) => {
            if !g.im.is_zero() {
                return Err(EngineError::ImaginaryResidue(crate::arith::rational_to_f64(&g.im)));
            }
            Scalar::from(g.re.clone())
        }
        Scalar::Float(z) => {
            if z.im.abs() > TRIG_TOLERANCE {
                return Err(EngineError::ImaginaryResidue(z.im));
            }
            Scalar::float(z.re, 0.0)
        }
    };
    Ok(sum)
}
