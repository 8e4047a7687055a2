use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{Rational, Scalar};

/// Dense univariate polynomial, coefficient index = degree.
///
/// The coefficient list never ends in an exact zero; the zero polynomial
/// has no coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim(0.0);
        p
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    /// xᵏ
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); k + 1];
        coeffs[k] = Scalar::one();
        Polynomial { coeffs }
    }

    /// a·x + b
    pub fn linear(a: Scalar, b: Scalar) -> Self {
        Self::new(vec![b, a])
    }

    pub fn from_rationals(coeffs: impl IntoIterator<Item = Rational>) -> Self {
        Self::new(coeffs.into_iter().map(Scalar::from).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_exact)
    }

    /// Drops trailing coefficients whose magnitude is below `tol` (exact
    /// zeros are always dropped).
    pub(crate) fn trim(&mut self, tol: f64) {
        while let Some(last) = self.coeffs.last() {
            if last.is_zero() || (!last.is_exact() && last.is_zero_tol(tol)) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub(crate) fn to_float(&self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(Scalar::to_float).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn evaluate(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn evaluate_int(&self, n: i64) -> Scalar {
        self.evaluate(&Scalar::from_int(n))
    }

    /// P(m·x + c)
    pub fn compose_affine(&self, m: &Scalar, c: &Scalar) -> Polynomial {
        let inner = Polynomial::linear(m.clone(), c.clone());
        let mut acc = Polynomial::zero();
        for coeff in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &Polynomial::constant(coeff.clone());
        }
        acc
    }

    /// ∫₋₁⁰ P(x) dx = Σ c_k·(−1)^k/(k+1)
    pub fn integral_minus_one_to_zero(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let w = Scalar::from(Rational::new(sign.into(), (k as i64 + 1).into()));
            acc = &acc + &(c * &w);
        }
        acc
    }

    pub fn approx_eq(&self, other: &Polynomial, tol: f64) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|k| self.coeff(k).approx_eq(&other.coeff(k), tol))
    }

    /// Renders in the variable `var`, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = c.to_string();
            let needs_parens = coeff.contains(' ');
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let part = if k == 0 {
                if needs_parens { format!("({coeff})") } else { coeff }
            } else if c.is_one() {
                mono
            } else if coeff == "-1" {
                format!("-{mono}")
            } else if needs_parens {
                format!("({coeff})*{mono}")
            } else {
                format!("{coeff}*{mono}")
            };
            parts.push(part);
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("n"))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}
