use num_complex::Complex64;

use crate::oracle::Evaluable;

use super::ast::{BinOp, Constant, Expr, ExprKind, Func};
use super::lower::{constant, Env, Num};

/// Floating-point value at variable = n; NaN where undefined (unbound θ,
/// division by zero).
pub fn eval_float(expr: &Expr, n: i64, theta: Option<&Num>) -> Complex64 {
    let nan = Complex64::new(f64::NAN, f64::NAN);
    match &expr.kind {
        ExprKind::Number(r, _) => Complex64::new(crate::arith::rational_to_f64(r), 0.0),
        ExprKind::Var(_) => Complex64::new(n as f64, 0.0),
        ExprKind::Const(Constant::Pi) => Complex64::new(std::f64::consts::PI, 0.0),
        ExprKind::Const(Constant::E) => Complex64::new(std::f64::consts::E, 0.0),
        ExprKind::Const(Constant::Theta) => theta.map_or(nan, Num::to_complex),
        ExprKind::Neg(e) => -eval_float(e, n, theta),
        ExprKind::Call(f, arg) => {
            let z = eval_float(arg, n, theta);
            match f {
                Func::Cos => z.cos(),
                Func::Sin => z.sin(),
                Func::Cosh => z.cosh(),
                Func::Sinh => z.sinh(),
                Func::Exp => z.exp(),
                Func::Tan => z.tan(),
            }
        }
        ExprKind::Binary(op, l, r) => {
            let (a, b) = (eval_float(l, n, theta), eval_float(r, n, theta));
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => a / b,
                BinOp::Pow => {
                    let integral = b.im == 0.0 && b.re.fract() == 0.0 && b.re.abs() < i32::MAX as f64;
                    if integral {
                        a.powi(b.re as i32)
                    } else if a.im == 0.0 && a.re > 0.0 && b.im == 0.0 {
                        Complex64::new(a.re.powf(b.re), 0.0)
                    } else {
                        a.powc(b)
                    }
                }
            }
        }
    }
}

/// Exact value at variable = n, when every constant involved is a Gaussian
/// rational.
pub fn eval_exact(expr: &Expr, n: i64, theta: Option<&Num>) -> Option<crate::arith::GaussianRational> {
    let env = Env { var: Some(n), theta: theta.cloned() };
    match constant(expr, &env) {
        Ok(Num::Exact(g)) => Some(g),
        _ => None,
    }
}

/// An expression with θ bound, sampled in floating point.
#[derive(Debug, Clone)]
pub struct BoundExpr {
    pub expr: Expr,
    pub theta: Option<Num>,
}

impl Evaluable for BoundExpr {
    fn eval(&self, n: i64) -> Complex64 {
        eval_float(&self.expr, n, self.theta.as_ref())
    }
}
