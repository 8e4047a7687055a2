//! Exponential polynomials f(n) = Σ_λ λⁿ·P_λ(n).
//!
//! This is the class of functions the engine sums symbolically. It is
//! closed under the antidifference, integer shifts, reflection n ↦ −n and
//! affine substitution n ↦ m·n + c, which is everything the summation rules
//! need.

mod polynomial;

pub use polynomial::Polynomial;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::arith::Scalar;

/// Default equality tolerance in float mode.
pub const DEFAULT_FLOAT_TOLERANCE: f64 = 1e-12;

/// Arithmetic mode of an [`ExpPoly`]: exact Gaussian rationals, or complex
/// floats compared with a tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode {
    Exact,
    Float { tolerance: f64 },
}

impl Mode {
    pub fn float() -> Self {
        Mode::Float { tolerance: DEFAULT_FLOAT_TOLERANCE }
    }

    /// Zero in exact mode.
    pub fn tolerance(&self) -> f64 {
        match self {
            Mode::Exact => 0.0,
            Mode::Float { tolerance } => *tolerance,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Mode::Exact)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float { .. } => "float",
        }
    }

    fn same_tag(&self, other: &Mode) -> bool {
        self.is_exact() == other.is_exact()
    }

    fn join(&self, other: &Mode) -> Mode {
        match (self, other) {
            (Mode::Float { tolerance: a }, Mode::Float { tolerance: b }) => Mode::Float { tolerance: a.min(*b) },
            _ => *self,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExpPolyError {
    #[error("mode mismatch: {0} vs {1}")]
    ModeMismatch(&'static str, &'static str),
    #[error("float scalar {0} in an exact-mode expression")]
    InexactScalar(String),
    #[error("zero is not a valid exponential base")]
    ZeroBase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convergence {
    SummableClassically,
    Divergent,
}

/// Σ_λ λⁿ·P_λ(n) in canonical form: bases sorted and pairwise distinct,
/// no zero polynomials, every scalar matching the mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpPoly {
    terms: Vec<(Scalar, Polynomial)>,
    mode: Mode,
}

impl ExpPoly {
    pub fn zero(mode: Mode) -> Self {
        ExpPoly { terms: Vec::new(), mode }
    }

    /// Builds and normalizes; fails if an exact-mode term carries a float
    /// scalar or a base is zero. Float mode converts exact scalars.
    pub fn new(mode: Mode, terms: impl IntoIterator<Item = (Scalar, Polynomial)>) -> Result<Self, ExpPolyError> {
        let mut out = Vec::new();
        for (base, poly) in terms {
            if base.is_zero() {
                return Err(ExpPolyError::ZeroBase);
            }
            if mode.is_exact() {
                if !base.is_exact() {
                    return Err(ExpPolyError::InexactScalar(base.to_string()));
                }
                if let Some(c) = poly.coeffs().iter().find(|c| !c.is_exact()) {
                    return Err(ExpPolyError::InexactScalar(c.to_string()));
                }
            }
            out.push((base, poly));
        }
        Ok(ExpPoly { terms: out, mode }.normalize())
    }

    /// One term λⁿ·P(n); exact mode iff every scalar is exact.
    pub fn single(base: Scalar, poly: Polynomial) -> Self {
        let mode = if base.is_exact() && poly.is_exact() { Mode::Exact } else { Mode::float() };
        Self::new(mode, [(base, poly)]).expect("single term with nonzero base")
    }

    pub fn from_polynomial(poly: Polynomial) -> Self {
        Self::single(Scalar::one(), poly)
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_polynomial(Polynomial::constant(c))
    }

    /// nᵏ
    pub fn power(k: usize) -> Self {
        Self::from_polynomial(Polynomial::monomial(k))
    }

    /// λⁿ
    pub fn geometric(base: Scalar) -> Self {
        Self::single(base, Polynomial::constant(Scalar::one()))
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn terms(&self) -> &[(Scalar, Polynomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest polynomial degree over all bases.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.iter().filter_map(|(_, p)| p.degree()).max()
    }

    /// The λ = 1 polynomial (zero if absent).
    pub fn polynomial_part(&self) -> Polynomial {
        self.terms
            .iter()
            .find(|(b, _)| b.is_one())
            .map(|(_, p)| p.clone())
            .unwrap_or_default()
    }

    /// Converts to `mode`. Exact → float is always possible; float → exact
    /// is refused.
    pub fn with_mode(&self, mode: Mode) -> Result<ExpPoly, ExpPolyError> {
        if self.mode.is_exact() || !mode.is_exact() {
            Self::new(mode, self.terms.iter().cloned())
        } else {
            Err(ExpPolyError::ModeMismatch(self.mode.name(), mode.name()))
        }
    }

    /// Canonical form: equal bases merged, zero polynomials dropped, bases
    /// sorted. In float mode bases within tolerance are merged and a base
    /// within tolerance of 1 is snapped to exactly 1. Idempotent.
    pub fn normalize(self) -> ExpPoly {
        let mode = self.mode;
        let tol = mode.tolerance();
        let mut merged: Vec<(Scalar, Polynomial)> = Vec::with_capacity(self.terms.len());
        for (base, poly) in self.terms {
            let (base, poly) = if mode.is_exact() {
                (base, poly)
            } else {
                let mut b = base.to_float();
                if b.approx_eq(&Scalar::float(1.0, 0.0), tol) {
                    b = Scalar::float(1.0, 0.0);
                }
                (b, poly.to_float())
            };
            let slot = if mode.is_exact() {
                merged.binary_search_by(|(b, _)| b.canonical_cmp(&base)).ok()
            } else {
                merged.iter().position(|(b, _)| b.approx_eq(&base, tol))
            };
            match slot {
                Some(i) => merged[i].1 = &merged[i].1 + &poly,
                None => {
                    let at = merged
                        .binary_search_by(|(b, _)| b.canonical_cmp(&base))
                        .unwrap_or_else(|i| i);
                    merged.insert(at, (base, poly));
                }
            }
        }
        for (_, p) in merged.iter_mut() {
            p.trim(tol);
        }
        merged.retain(|(_, p)| !p.is_zero());
        if !mode.is_exact() {
            merged.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        }
        ExpPoly { terms: merged, mode }
    }

    fn check_mode(&self, other: &ExpPoly) -> Result<Mode, ExpPolyError> {
        if self.mode.same_tag(&other.mode) {
            Ok(self.mode.join(&other.mode))
        } else {
            Err(ExpPolyError::ModeMismatch(self.mode.name(), other.mode.name()))
        }
    }

    pub fn checked_add(&self, other: &ExpPoly) -> Result<ExpPoly, ExpPolyError> {
        let mode = self.check_mode(other)?;
        let terms = self.terms.iter().chain(other.terms.iter()).cloned().collect();
        Ok(ExpPoly { terms, mode }.normalize())
    }

    pub fn checked_sub(&self, other: &ExpPoly) -> Result<ExpPoly, ExpPolyError> {
        self.checked_add(&-other)
    }

    /// Pointwise product; bases multiply pairwise.
    pub fn checked_mul(&self, other: &ExpPoly) -> Result<ExpPoly, ExpPolyError> {
        let mode = self.check_mode(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                terms.push((a * b, p * q));
            }
        }
        Ok(ExpPoly { terms, mode }.normalize())
    }

    pub fn checked_scale(&self, c: &Scalar) -> Result<ExpPoly, ExpPolyError> {
        if self.mode.is_exact() && !c.is_exact() {
            return Err(ExpPolyError::InexactScalar(c.to_string()));
        }
        let terms = self.terms.iter().map(|(b, p)| (b.clone(), p.scale(c))).collect();
        Ok(ExpPoly { terms, mode: self.mode }.normalize())
    }

    /// Scalar multiple. Panics if a float scalar meets an exact-mode value.
    pub fn scale(&self, c: &Scalar) -> ExpPoly {
        self.checked_scale(c).expect("scale: mode mismatch")
    }

    /// Non-negative integer power.
    pub fn pow(&self, k: u32) -> ExpPoly {
        let mut acc = ExpPoly::constant(Scalar::one()).with_mode(self.mode).expect("exact constant");
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// n ↦ f(n + t)
    pub fn shift(&self, t: i64) -> ExpPoly {
        let ts = Scalar::from_int(t);
        let terms = self
            .terms
            .iter()
            .map(|(b, p)| {
                let factor = b.powi(t).expect("nonzero base");
                (b.clone(), p.compose_affine(&Scalar::one(), &ts).scale(&factor))
            })
            .collect();
        ExpPoly { terms, mode: self.mode }.normalize()
    }

    /// n ↦ f(−n): bases invert, P(n) ↦ P(−n).
    pub fn reflect(&self) -> ExpPoly {
        let terms = self
            .terms
            .iter()
            .map(|(b, p)| (b.inv().expect("nonzero base"), p.compose_affine(&Scalar::from_int(-1), &Scalar::zero())))
            .collect();
        ExpPoly { terms, mode: self.mode }.normalize()
    }

    /// u ↦ f(m·u + c): bases become λᵐ, polynomials are composed with
    /// m·u + c and scaled by λᶜ.
    pub fn substitute_affine(&self, m: u32, c: i64) -> ExpPoly {
        let ms = Scalar::from_int(m as i64);
        let cs = Scalar::from_int(c);
        let terms = self
            .terms
            .iter()
            .map(|(b, p)| {
                let base = b.powi(m as i64).expect("nonzero base");
                let factor = b.powi(c).expect("nonzero base");
                (base, p.compose_affine(&ms, &cs).scale(&factor))
            })
            .collect();
        ExpPoly { terms, mode: self.mode }.normalize()
    }

    pub fn evaluate(&self, n: i64) -> Scalar {
        let x = Scalar::from_int(n);
        self.terms.iter().fold(Scalar::zero(), |acc, (b, p)| {
            let lam = b.powi(n).expect("nonzero base");
            &acc + &(&lam * &p.evaluate(&x))
        })
    }

    /// Tolerance-aware equality of canonical forms.
    pub fn approx_eq(&self, other: &ExpPoly) -> bool {
        if self.mode.is_exact() && other.mode.is_exact() {
            return self == other;
        }
        let tol = self.mode.tolerance().max(other.mode.tolerance());
        let diff = match self.with_mode(Mode::Float { tolerance: tol }).and_then(|a| {
            other.with_mode(Mode::Float { tolerance: tol }).map(|b| &a - &b)
        }) {
            Ok(d) => d,
            Err(_) => return false,
        };
        diff.is_zero()
    }

    /// Parity with the limit conditions included: f is even when
    /// f(−n) = f(n) identically and lim f(−n) = lim f(n); odd when
    /// f(−n) = −f(n) and lim f(−n) = −lim f(n). Both assigned limits are
    /// computed, never assumed.
    pub fn parity(&self) -> Parity {
        use crate::engine::assigned_limit;
        let reflected = self.reflect();
        let tol = self.mode.tolerance();
        let lim = assigned_limit(self).value;
        let lim_reflected = assigned_limit(&reflected).value;
        if reflected.approx_eq(self) && lim_reflected.approx_eq(&lim, tol) {
            Parity::Even
        } else if reflected.approx_eq(&-self) && lim_reflected.approx_eq(&-&lim, tol) {
            Parity::Odd
        } else {
            Parity::Neither
        }
    }

    /// Classically summable over n → +∞ iff every base has |λ| < 1.
    pub fn classify_convergence(&self) -> Convergence {
        let tol = self.mode.tolerance();
        if self.terms.iter().all(|(b, _)| b.modulus_cmp_one(tol) == Ordering::Less) {
            Convergence::SummableClassically
        } else {
            Convergence::Divergent
        }
    }

    /// Renders in the variable `var`.
    pub fn render(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, p)| {
                let poly = p.render(var);
                if b.is_one() {
                    return poly;
                }
                let base = b.to_string();
                let base = if base.starts_with('-') || base.contains(' ') || base.contains('/') || base.contains('·') {
                    format!("({base})")
                } else {
                    base
                };
                if p.degree() == Some(0) && p.coeff(0).is_one() {
                    format!("{base}^{var}")
                } else {
                    format!("{base}^{var}*({poly})")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("n"))
    }
}

impl<'a> Add<&'a ExpPoly> for &'a ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: &ExpPoly) -> ExpPoly {
        self.checked_add(rhs).expect("add: mode mismatch")
    }
}

impl<'a> Sub<&'a ExpPoly> for &'a ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: &ExpPoly) -> ExpPoly {
        self.checked_sub(rhs).expect("sub: mode mismatch")
    }
}

impl<'a> Mul<&'a ExpPoly> for &'a ExpPoly {
    type Output = ExpPoly;
    fn mul(self, rhs: &ExpPoly) -> ExpPoly {
        self.checked_mul(rhs).expect("mul: mode mismatch")
    }
}

impl Neg for &ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        ExpPoly { terms: self.terms.iter().map(|(b, p)| (b.clone(), -p)).collect(), mode: self.mode }
    }
}

impl Add for ExpPoly {
    type Output = ExpPoly;
    fn add(self, rhs: ExpPoly) -> ExpPoly {
        &self + &rhs
    }
}

impl Sub for ExpPoly {
    type Output = ExpPoly;
    fn sub(self, rhs: ExpPoly) -> ExpPoly {
        &self - &rhs
    }
}

impl Mul for ExpPoly {
    type Output = ExpPoly;
    fn mul(self, rhs: ExpPoly) -> ExpPoly {
        &self * &rhs
    }
}

impl Neg for ExpPoly {
    type Output = ExpPoly;
    fn neg(self) -> ExpPoly {
        -&self
    }
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

    fn alt() -> ExpPoly {
        ExpPoly::geometric(Scalar::from_int(-1))
    }

    #[test]
    fn normalize_examples() {
        let z = ExpPoly::new(Mode::Exact, [(Scalar::from_int(2), Polynomial::zero())]).unwrap();
        assert!(z.is_zero());
        let n = ExpPoly::power(1);
        assert!((&n + &-&n).is_zero());
        let merged = ExpPoly::new(
            Mode::Exact,
            [(Scalar::from_int(-1), poly(&[1])), (Scalar::from_int(-1), poly(&[0, 1]))],
        )
        .unwrap();
        assert_eq!(merged, ExpPoly::single(Scalar::from_int(-1), poly(&[1, 1])));
        assert_eq!(merged.clone().normalize(), merged);
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&alt() * &alt(), ExpPoly::constant(Scalar::one()));
        let two = ExpPoly::geometric(Scalar::from_int(2));
        assert_eq!(&two + &two.scale(&Scalar::from_int(3)), ExpPoly::single(Scalar::from_int(2), poly(&[4])));
        let n = ExpPoly::power(1);
        assert_eq!(&n * &n, ExpPoly::power(2));
    }

    #[test]
    fn mode_mismatch_is_reported() {
        let exact = ExpPoly::power(1);
        let float = exact.with_mode(Mode::float()).unwrap();
        assert!(matches!(exact.checked_add(&float), Err(ExpPolyError::ModeMismatch(..))));
        assert!(float.with_mode(Mode::Exact).is_err());
        assert!(ExpPoly::new(Mode::Exact, [(Scalar::float(2.0, 0.0), poly(&[1]))]).is_err());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(ExpPoly::power(1).shift(1), ExpPoly::from_polynomial(poly(&[1, 1])));
        assert_eq!(
            ExpPoly::geometric(Scalar::from_int(2)).shift(-1),
            ExpPoly::single(Scalar::from_int(2), Polynomial::constant(q(1, 2)))
        );
        let f = ExpPoly::single(Scalar::from_int(-1), poly(&[0, 1]));
        assert_eq!(f.shift(2), ExpPoly::single(Scalar::from_int(-1), poly(&[2, 1])));
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(ExpPoly::power(2).reflect(), ExpPoly::power(2));
        assert_eq!(ExpPoly::geometric(Scalar::from_int(2)).reflect(), ExpPoly::geometric(q(1, 2)));
        let f = ExpPoly::single(Scalar::from_int(-1), poly(&[0, 1]));
        assert_eq!(f.reflect(), -&f);
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(ExpPoly::power(1).substitute_affine(2, -1), ExpPoly::from_polynomial(poly(&[-1, 2])));
        assert_eq!(alt().substitute_affine(2, 0), ExpPoly::constant(Scalar::one()));
        assert_eq!(
            ExpPoly::geometric(Scalar::from_int(2)).substitute_affine(2, 0),
            ExpPoly::geometric(Scalar::from_int(4))
        );
    }

    #[test]
    fn parity_examples() {
        assert_eq!(ExpPoly::power(2).parity(), Parity::Even);
        let cosh_like = &ExpPoly::geometric(Scalar::from_int(2)) + &ExpPoly::geometric(q(1, 2));
        assert_eq!(cosh_like.parity(), Parity::Even);
        // lim n = −1/2 and lim(−n) = 1/2, so the limit condition for oddness holds.
        assert_eq!(ExpPoly::power(1).parity(), Parity::Odd);
        assert_eq!(ExpPoly::from_polynomial(poly(&[1, 1])).parity(), Parity::Neither);
    }

    #[test]
    fn evaluate_examples() {
        // (−1)ⁿ(2n−1)/4 at n = 1
        let f = ExpPoly::single(Scalar::from_int(-1), Polynomial::from_rationals([ratio(-1, 4), ratio(1, 2)]));
        assert_eq!(f.evaluate(1), q(-1, 4));
        assert_eq!(ExpPoly::power(2).evaluate(-3), Scalar::from_int(9));
        assert_eq!(ExpPoly::geometric(Scalar::from_int(2)).evaluate(0), Scalar::one());
    }

    #[test]
    fn convergence_examples() {
        assert_eq!(ExpPoly::geometric(q(1, 2)).classify_convergence(), Convergence::SummableClassically);
        assert_eq!(ExpPoly::constant(Scalar::one()).classify_convergence(), Convergence::Divergent);
        assert_eq!(
            ExpPoly::single(Scalar::from_int(-1), poly(&[0, 1])).classify_convergence(),
            Convergence::Divergent
        );
        assert_eq!(ExpPoly::zero(Mode::Exact).classify_convergence(), Convergence::SummableClassically);
    }

    #[test]
    fn float_mode_merges_nearby_bases() {
        let a = ExpPoly::geometric(Scalar::float(0.5, 0.0));
        let b = ExpPoly::geometric(Scalar::float(0.5 + 1e-15, 0.0));
        let s = &a + &b;
        assert_eq!(s.terms().len(), 1);
        let near_one = ExpPoly::geometric(Scalar::float(1.0 + 1e-14, 0.0));
        assert!(near_one.terms()[0].0.is_one());
    }

    #[test]
    fn rendering() {
        let f = &ExpPoly::power(2) + &ExpPoly::single(Scalar::from_int(-1), poly(&[0, 1]));
        assert_eq!(f.to_string(), "(-1)^n*(n) + n^2");
        assert_eq!(ExpPoly::geometric(Scalar::from_int(2)).to_string(), "2^n");
    }
}
