//! Lowering expressions to exponential polynomials, exactly when every
//! constant is a Gaussian rational and in floating point otherwise.

use std::f64::consts::{E, PI};

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{rational_to_f64, ratio, GaussianRational, Rational, Scalar};
use crate::engine::Angle;
use crate::exppoly::{ExpPoly, Mode, Polynomial};

use super::ast::{BinOp, Constant, Expr, ExprKind, Func};
use super::ParseError;

/// A constant met while lowering: exact, an exact multiple of π, or float.
#[derive(Debug, Clone, PartialEq)]
pub enum Num {
    Exact(GaussianRational),
    Pi(Rational),
    Float(Complex64),
}

impl Num {
    fn int(n: i64) -> Num {
        Num::Exact(GaussianRational::from_int(n))
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Num::Exact(g) => g.to_complex(),
            Num::Pi(r) => Complex64::new(rational_to_f64(r) * PI, 0.0),
            Num::Float(z) => *z,
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Num::Exact(g) => g.is_zero(),
            Num::Pi(r) => r.is_zero(),
            Num::Float(z) => z.norm() == 0.0,
        }
    }

    fn real_exact(&self) -> Option<&Rational> {
        match self {
            Num::Exact(g) if g.is_real() => Some(&g.re),
            _ => None,
        }
    }

    /// Small integer value, if this is one exactly.
    fn as_i64(&self) -> Option<i64> {
        self.real_exact().filter(|r| r.is_integer()).and_then(|r| r.to_integer().to_i64())
    }

    fn neg(&self) -> Num {
        match self {
            Num::Exact(g) => Num::Exact(-g),
            Num::Pi(r) => Num::Pi(-r),
            Num::Float(z) => Num::Float(-z),
        }
    }

    fn add(&self, other: &Num) -> Num {
        match (self, other) {
            (Num::Exact(a), Num::Exact(b)) => Num::Exact(a + b),
            (Num::Pi(a), Num::Pi(b)) => Num::Pi(a + b),
            (x, y) if y.is_zero() => x.clone(),
            (x, y) if x.is_zero() => y.clone(),
            (x, y) => Num::Float(x.to_complex() + y.to_complex()),
        }
    }

    fn mul(&self, other: &Num) -> Num {
        match (self, other) {
            (Num::Exact(a), Num::Exact(b)) => Num::Exact(a * b),
            (Num::Pi(p), q) | (q, Num::Pi(p)) if q.real_exact().is_some() => Num::Pi(p * q.real_exact().unwrap()),
            (x, y) => Num::Float(x.to_complex() * y.to_complex()),
        }
    }

    fn div(&self, other: &Num) -> Result<Num, ParseError> {
        if other.is_zero() {
            return Err(ParseError::Unsupported("division by zero".into()));
        }
        Ok(match (self, other) {
            (Num::Exact(a), Num::Exact(b)) => Num::Exact(a / b),
            (Num::Pi(a), Num::Pi(b)) => Num::Exact(GaussianRational::real(a / b)),
            (Num::Pi(a), b) if b.real_exact().is_some() => Num::Pi(a / b.real_exact().unwrap()),
            (x, y) => Num::Float(x.to_complex() / y.to_complex()),
        })
    }

    fn pow(&self, exp: &Num) -> Result<Num, ParseError> {
        if let (Num::Exact(b), Some(k)) = (self, exp.as_i64()) {
            return Scalar::Exact(b.clone())
                .powi(k)
                .map(|s| Num::Exact(s.as_exact().expect("exact power").clone()))
                .ok_or_else(|| ParseError::Unsupported("zero to a negative power".into()));
        }
        let (b, e) = (self.to_complex(), exp.to_complex());
        if b.norm() == 0.0 {
            return Err(ParseError::Unsupported("zero to a non-integer power".into()));
        }
        Ok(Num::Float(match exp.as_i64() {
            Some(k) if k.unsigned_abs() < i32::MAX as u64 => b.powi(k as i32),
            _ => b.powc(e),
        }))
    }

    /// As a rotation angle θ, for e^{iθ}.
    fn angle(&self) -> Result<Angle, ParseError> {
        match self {
            Num::Pi(r) => Ok(Angle::PiMultiple(r.clone())),
            Num::Exact(g) if g.is_zero() => Ok(Angle::PiMultiple(Rational::zero())),
            Num::Exact(g) if g.is_real() => Ok(Angle::Radians(rational_to_f64(&g.re))),
            Num::Float(z) if z.im == 0.0 => Ok(Angle::Radians(z.re)),
            _ => Err(ParseError::Unsupported("trigonometric argument is not real".into())),
        }
    }
}

fn scalar_to_num(s: Scalar) -> Num {
    match s {
        Scalar::Exact(g) => Num::Exact(g),
        Scalar::Float(z) => Num::Float(z),
    }
}

/// Values available while evaluating: the variable (when bound to an
/// integer) and θ.
#[derive(Debug, Clone, Default)]
pub struct Env {
    pub var: Option<i64>,
    pub theta: Option<Num>,
}

impl Env {
    pub fn with_theta(theta: Option<&Expr>) -> Result<Env, ParseError> {
        let theta = match theta {
            Some(t) => Some(constant(t, &Env::default())?),
            None => None,
        };
        Ok(Env { var: None, theta })
    }
}

fn call(func: Func, arg: &Num) -> Result<Num, ParseError> {
    let half = Num::Exact(GaussianRational::real(ratio(1, 2)));
    if let (Func::Cos | Func::Sin, Ok(angle)) = (func, arg.angle()) {
        let unit = scalar_to_num(angle.unit());
        let conj = match &unit {
            Num::Exact(g) => Num::Exact(g.conj()),
            Num::Float(z) => Num::Float(z.conj()),
            Num::Pi(_) => unreachable!("unit returns a scalar"),
        };
        return Ok(match func {
            Func::Cos => unit.add(&conj).mul(&half),
            _ => unit.add(&conj.neg()).mul(&half).mul(&Num::Exact(GaussianRational::i()).neg()),
        });
    }
    if arg.is_zero() {
        return Ok(match func {
            Func::Sin | Func::Sinh | Func::Tan => Num::int(0),
            _ => Num::int(1),
        });
    }
    let z = arg.to_complex();
    Ok(Num::Float(match func {
        Func::Cos => z.cos(),
        Func::Sin => z.sin(),
        Func::Cosh => z.cosh(),
        Func::Sinh => z.sinh(),
        Func::Exp => z.exp(),
        Func::Tan => z.tan(),
    }))
}

/// Value of a variable-free expression (or of any expression once the
/// variable is bound in `env`).
pub fn constant(expr: &Expr, env: &Env) -> Result<Num, ParseError> {
    match &expr.kind {
        ExprKind::Number(r, _) => Ok(Num::Exact(GaussianRational::real(r.clone()))),
        ExprKind::Var(v) => env
            .var
            .map(Num::int)
            .ok_or_else(|| ParseError::Unsupported(format!("variable '{v}' in a constant position"))),
        ExprKind::Const(Constant::Pi) => Ok(Num::Pi(ratio(1, 1))),
        ExprKind::Const(Constant::E) => Ok(Num::Float(Complex64::new(E, 0.0))),
        ExprKind::Const(Constant::Theta) => {
            env.theta.clone().ok_or_else(|| ParseError::Unsupported("theta is not bound".into()))
        }
        ExprKind::Neg(e) => Ok(constant(e, env)?.neg()),
        ExprKind::Call(f, arg) => call(*f, &constant(arg, env)?),
        ExprKind::Binary(op, l, r) => {
            let (a, b) = (constant(l, env)?, constant(r, env)?);
            match op {
                BinOp::Add => Ok(a.add(&b)),
                BinOp::Sub => Ok(a.add(&b.neg())),
                BinOp::Mul => Ok(a.mul(&b)),
                BinOp::Div => a.div(&b),
                BinOp::Pow => a.pow(&b),
            }
        }
    }
}

/// (coefficient of the variable, constant term) of an expression linear in
/// the variable.
fn affine(expr: &Expr, env: &Env) -> Result<(Num, Num), ParseError> {
    if !expr.contains_var() {
        return Ok((Num::int(0), constant(expr, env)?));
    }
    let not_linear = || ParseError::Unsupported(format!("'{}' is not linear in the variable", expr.render()));
    match &expr.kind {
        ExprKind::Var(_) => Ok((Num::int(1), Num::int(0))),
        ExprKind::Neg(e) => {
            let (c, d) = affine(e, env)?;
            Ok((c.neg(), d.neg()))
        }
        ExprKind::Binary(op @ (BinOp::Add | BinOp::Sub), l, r) => {
            let (c1, d1) = affine(l, env)?;
            let (c2, d2) = affine(r, env)?;
            if *op == BinOp::Add {
                Ok((c1.add(&c2), d1.add(&d2)))
            } else {
                Ok((c1.add(&c2.neg()), d1.add(&d2.neg())))
            }
        }
        ExprKind::Binary(BinOp::Mul, l, r) => {
            let (k, side) = if l.contains_var() { (r, l) } else { (l, r) };
            if k.contains_var() {
                return Err(not_linear());
            }
            let k = constant(k, env)?;
            let (c, d) = affine(side, env)?;
            Ok((c.mul(&k), d.mul(&k)))
        }
        ExprKind::Binary(BinOp::Div, l, r) if !r.contains_var() => {
            let k = constant(r, env)?;
            let (c, d) = affine(l, env)?;
            Ok((c.div(&k)?, d.div(&k)?))
        }
        _ => Err(not_linear()),
    }
}

/// Raised inside the exact pass when a constant is irrational.
struct NeedsFloat;

enum LowerError {
    NeedsFloat,
    Fatal(ParseError),
}

impl From<ParseError> for LowerError {
    fn from(e: ParseError) -> Self {
        LowerError::Fatal(e)
    }
}

impl From<NeedsFloat> for LowerError {
    fn from(_: NeedsFloat) -> Self {
        LowerError::NeedsFloat
    }
}

struct Lowerer<'a> {
    mode: Mode,
    env: &'a Env,
}

impl Lowerer<'_> {
    fn scalar(&self, n: &Num) -> Result<Scalar, NeedsFloat> {
        match (n, self.mode.is_exact()) {
            (Num::Exact(g), true) => Ok(Scalar::Exact(g.clone())),
            (_, true) => Err(NeedsFloat),
            (n, false) => {
                let z = n.to_complex();
                Ok(Scalar::float(z.re, z.im))
            }
        }
    }

    fn term(&self, base: &Num, coeff: &Num) -> Result<ExpPoly, LowerError> {
        let base = self.scalar(base)?;
        if base.is_zero() {
            return Err(ParseError::Unsupported("zero base raised to the variable".into()).into());
        }
        let c = self.scalar(coeff)?;
        Ok(ExpPoly::new(self.mode, [(base, Polynomial::constant(c))]).expect("scalars match the mode"))
    }

    fn constant_poly(&self, n: &Num) -> Result<ExpPoly, LowerError> {
        self.term(&Num::int(1), n)
    }

    fn lower(&self, expr: &Expr) -> Result<ExpPoly, LowerError> {
        if !expr.contains_var() {
            return self.constant_poly(&constant(expr, self.env)?);
        }
        match &expr.kind {
            ExprKind::Var(_) => Ok(ExpPoly::power(1).with_mode(self.mode).expect("exact to any mode")),
            ExprKind::Neg(e) => Ok(-self.lower(e)?),
            ExprKind::Binary(BinOp::Add, l, r) => Ok(self.lower(l)? + self.lower(r)?),
            ExprKind::Binary(BinOp::Sub, l, r) => Ok(self.lower(l)? - self.lower(r)?),
            ExprKind::Binary(BinOp::Mul, l, r) => Ok(self.lower(l)? * self.lower(r)?),
            ExprKind::Binary(BinOp::Div, l, r) => {
                if r.contains_var() {
                    return Err(ParseError::Unsupported(format!(
                        "division by '{}', which depends on the variable",
                        r.render()
                    ))
                    .into());
                }
                let inv = Num::int(1).div(&constant(r, self.env)?)?;
                Ok(self.lower(l)?.scale(&self.scalar(&inv)?))
            }
            ExprKind::Binary(BinOp::Pow, base, exp) => self.power(base, exp),
            ExprKind::Call(func, arg) => self.call(*func, arg),
            ExprKind::Number(..) | ExprKind::Const(_) => unreachable!("variable-free"),
        }
    }

    fn power(&self, base: &Expr, exp: &Expr) -> Result<ExpPoly, LowerError> {
        if !exp.contains_var() {
            let k = constant(exp, self.env)?;
            return match k.as_i64() {
                Some(k) if (0..=u32::MAX as i64).contains(&k) => Ok(self.lower(base)?.pow(k as u32)),
                _ => Err(ParseError::Unsupported(format!(
                    "exponent '{}' on a variable base must be a non-negative integer",
                    exp.render()
                ))
                .into()),
            };
        }
        if base.contains_var() {
            return Err(ParseError::Unsupported("variable in both base and exponent".into()).into());
        }
        // b^(c·u + d) = b^d · (b^c)^u
        let b = constant(base, self.env)?;
        let (c, d) = affine(exp, self.env)?;
        self.term(&b.pow(&c)?, &b.pow(&d)?)
    }

    fn call(&self, func: Func, arg: &Expr) -> Result<ExpPoly, LowerError> {
        if func == Func::Tan {
            return Err(ParseError::Unsupported("tan of the variable is not an exponential polynomial".into()).into());
        }
        let (c, d) = affine(arg, self.env)?;
        let half = Num::Exact(GaussianRational::real(ratio(1, 2)));
        match func {
            Func::Cos | Func::Sin => {
                // e^{±i(θu + φ)} = (e^{±iφ})·(e^{±iθ})^u
                let lam = scalar_to_num(c.angle()?.unit());
                let mu = scalar_to_num(d.angle()?.unit());
                let (lam_c, mu_c) = (conj(&lam), conj(&mu));
                let (k1, k2) = match func {
                    Func::Cos => (mu.mul(&half), mu_c.mul(&half)),
                    _ => {
                        let minus_half_i = Num::Exact(GaussianRational::new(ratio(0, 1), ratio(-1, 2)));
                        (mu.mul(&minus_half_i), mu_c.mul(&minus_half_i).neg())
                    }
                };
                Ok(self.term(&lam, &k1)? + self.term(&lam_c, &k2)?)
            }
            _ => {
                let e = Num::Float(Complex64::new(E, 0.0));
                let up = self.term(&e.pow(&c)?, &e.pow(&d)?)?;
                if func == Func::Exp {
                    return Ok(up);
                }
                let down = self.term(&e.pow(&c.neg())?, &e.pow(&d.neg())?)?;
                let h = self.scalar(&half)?;
                Ok(if func == Func::Cosh { (up + down).scale(&h) } else { (up - down).scale(&h) })
            }
        }
    }
}

fn conj(n: &Num) -> Num {
    match n {
        Num::Exact(g) => Num::Exact(g.conj()),
        Num::Float(z) => Num::Float(z.conj()),
        Num::Pi(r) => Num::Pi(r.clone()),
    }
}

/// How to pick the arithmetic mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModeChoice {
    /// Exact when possible, float otherwise.
    #[default]
    Auto,
    Exact,
    Float,
}

/// Lowers with an explicit mode; Exact fails on irrational constants.
pub fn lower(expr: &Expr, mode: Mode) -> Result<ExpPoly, ParseError> {
    lower_in(expr, mode, &Env::default())
}

pub fn lower_in(expr: &Expr, mode: Mode, env: &Env) -> Result<ExpPoly, ParseError> {
    match (Lowerer { mode, env }).lower(expr) {
        Ok(f) => Ok(f),
        Err(LowerError::Fatal(e)) => Err(e),
        Err(LowerError::NeedsFloat) => Err(ParseError::Unsupported(format!(
            "'{}' has irrational constants; use float mode",
            expr.render()
        ))),
    }
}

/// Lowers under a mode choice, falling back from exact to float for `Auto`.
pub fn lower_choice(expr: &Expr, choice: ModeChoice, tolerance: f64, env: &Env) -> Result<ExpPoly, ParseError> {
    let float = Mode::Float { tolerance };
    match choice {
        ModeChoice::Exact => lower_in(expr, Mode::Exact, env),
        ModeChoice::Float => lower_in(expr, float, env),
        ModeChoice::Auto => match (Lowerer { mode: Mode::Exact, env }).lower(expr) {
            Ok(f) => Ok(f),
            Err(LowerError::Fatal(e)) => Err(e),
            Err(LowerError::NeedsFloat) => lower_in(expr, float, env),
        },
    }
}
