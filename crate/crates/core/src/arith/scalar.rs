use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use super::gaussian::GaussianRational;
use super::rational::Rational;

/// Coefficient / base field element.
///
/// `Exact` values are Gaussian rationals. `Float` values are double
/// precision complex numbers; mixing the two in arithmetic promotes to
/// `Float`. Containers that care about modes (`ExpPoly`) refuse to mix.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(GaussianRational),
    Float(Complex64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(GaussianRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(GaussianRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(GaussianRational::from_int(n))
    }

    pub fn exact(re: Rational, im: Rational) -> Self {
        Scalar::Exact(GaussianRational::new(re, im))
    }

    pub fn float(re: f64, im: f64) -> Self {
        Scalar::Float(Complex64::new(re, im))
    }

    pub fn i() -> Self {
        Scalar::Exact(GaussianRational::i())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&GaussianRational> {
        match self {
            Scalar::Exact(g) => Some(g),
            Scalar::Float(_) => None,
        }
    }

    /// Real rational value, if this is an exact real.
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(g) if g.is_real() => Some(&g.re),
            _ => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(g) => g.to_complex(),
            Scalar::Float(z) => *z,
        }
    }

    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_complex())
    }

    /// Exact zero test, or |z| < tol for floats.
    pub fn is_zero_tol(&self, tol: f64) -> bool {
        match self {
            Scalar::Exact(g) => g.is_zero(),
            Scalar::Float(z) => z.norm() < tol,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(g) => g.is_zero(),
            Scalar::Float(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(g) => g.is_one(),
            Scalar::Float(z) => *z == Complex64::new(1.0, 0.0),
        }
    }

    pub fn approx_eq(&self, other: &Scalar, tol: f64) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => (self.to_complex() - other.to_complex()).norm() < tol,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Exact(g) => g.inv().map(Scalar::Exact),
            Scalar::Float(z) if z.norm() == 0.0 => None,
            Scalar::Float(z) => Some(Scalar::Float(z.inv())),
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        Some(self * &rhs.inv()?)
    }

    pub fn powi(&self, exp: i64) -> Option<Scalar> {
        match self {
            Scalar::Exact(g) => g.powi(exp).map(Scalar::Exact),
            Scalar::Float(z) => {
                if exp < 0 && z.norm() == 0.0 {
                    return None;
                }
                Some(Scalar::Float(complex_powi(*z, exp)))
            }
        }
    }

    /// Compares |self| with 1; floats within `tol` of the unit circle are
    /// reported as `Equal`.
    pub fn modulus_cmp_one(&self, tol: f64) -> Ordering {
        match self {
            Scalar::Exact(g) => g.modulus_cmp_one(),
            Scalar::Float(z) => {
                let m = z.norm();
                if (m - 1.0).abs() < tol {
                    Ordering::Equal
                } else if m < 1.0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    /// Sort key for canonical base ordering. Exact values sort before floats.
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.canonical_cmp(b),
            (Scalar::Exact(_), Scalar::Float(_)) => Ordering::Less,
            (Scalar::Float(_), Scalar::Exact(_)) => Ordering::Greater,
            (Scalar::Float(a), Scalar::Float(b)) => a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)),
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(g) => Scalar::Exact(g.conj()),
            Scalar::Float(z) => Scalar::Float(z.conj()),
        }
    }
}

fn complex_powi(z: Complex64, exp: i64) -> Complex64 {
    let mut base = if exp < 0 { z.inv() } else { z };
    let mut e = exp.unsigned_abs();
    let mut acc = Complex64::new(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        e >>= 1;
        if e > 0 {
            base *= base;
        }
    }
    acc
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Exact(GaussianRational::real(r))
    }
}

impl From<GaussianRational> for Scalar {
    fn from(g: GaussianRational) -> Self {
        Scalar::Exact(g)
    }
}

impl From<Complex64> for Scalar {
    fn from(z: Complex64) -> Self {
        Scalar::Float(z)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(g) => write!(f, "{g}"),
            Scalar::Float(z) if z.im == 0.0 => write!(f, "{}", z.re),
            Scalar::Float(z) if z.re == 0.0 => write!(f, "{}·i", z.im),
            Scalar::Float(z) => {
                let sign = if z.im < 0.0 { '-' } else { '+' };
                write!(f, "{} {} {}·i", z.re, sign, z.im.abs())
            }
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.$method(b)),
                    _ => Scalar::Float(self.to_complex().$method(rhs.to_complex())),
                }
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);
scalar_binop!(Div, div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(g) => Scalar::Exact(-g),
            Scalar::Float(z) => Scalar::Float(-z),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
