use std::fmt;

use crate::arith::Rational;

use super::lexer::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Cos,
    Sin,
    Cosh,
    Sinh,
    Exp,
    Tan,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "cos" => Func::Cos,
            "sin" => Func::Sin,
            "cosh" => Func::Cosh,
            "sinh" => Func::Sinh,
            "exp" => Func::Exp,
            "tan" => Func::Tan,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Cos => "cos",
            Func::Sin => "sin",
            Func::Cosh => "cosh",
            Func::Sinh => "sinh",
            Func::Exp => "exp",
            Func::Tan => "tan",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constant {
    Pi,
    E,
    /// Bound from the command line or an inline `theta = …`.
    Theta,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    /// Exact value plus the literal text, so decimals render as written.
    Number(Rational, String),
    /// The summation or sequence variable, `u` or `n`.
    Var(String),
    Const(Constant),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

/// Structural equality; spans are ignored and numbers compare by value.
impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        match (&self.kind, &other.kind) {
            (ExprKind::Number(a, _), ExprKind::Number(b, _)) => a == b,
            (ExprKind::Var(a), ExprKind::Var(b)) => a == b,
            (ExprKind::Const(a), ExprKind::Const(b)) => a == b,
            (ExprKind::Neg(a), ExprKind::Neg(b)) => a == b,
            (ExprKind::Binary(o1, l1, r1), ExprKind::Binary(o2, l2, r2)) => o1 == o2 && l1 == l2 && r1 == r2,
            (ExprKind::Call(f1, a1), ExprKind::Call(f2, a2)) => f1 == f2 && a1 == a2,
            _ => false,
        }
    }
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    pub fn contains_var(&self) -> bool {
        match &self.kind {
            ExprKind::Var(_) => true,
            ExprKind::Number(..) | ExprKind::Const(_) => false,
            ExprKind::Neg(e) | ExprKind::Call(_, e) => e.contains_var(),
            ExprKind::Binary(_, l, r) => l.contains_var() || r.contains_var(),
        }
    }

    fn precedence(&self) -> u8 {
        match &self.kind {
            ExprKind::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
            ExprKind::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
            ExprKind::Neg(_) => 3,
            ExprKind::Binary(BinOp::Pow, ..) => 4,
            _ => 5,
        }
    }

    /// Text that parses back to the same tree.
    pub fn render(&self) -> String {
        match &self.kind {
            ExprKind::Number(_, text) => text.clone(),
            ExprKind::Var(v) => v.clone(),
            ExprKind::Const(Constant::Pi) => "pi".into(),
            ExprKind::Const(Constant::E) => "e".into(),
            ExprKind::Const(Constant::Theta) => "theta".into(),
            ExprKind::Call(f, arg) => format!("{}({})", f.name(), arg.render()),
            ExprKind::Neg(e) => format!("-{}", e.wrap_if(e.precedence() < 3)),
            ExprKind::Binary(op, l, r) => {
                let p = self.precedence();
                match op {
                    BinOp::Pow => format!("{}^{}", l.wrap_if(l.precedence() <= 4), r.wrap_if(r.precedence() < 5)),
                    _ => {
                        let sym = match op {
                            BinOp::Add => " + ",
                            BinOp::Sub => " - ",
                            BinOp::Mul => "*",
                            _ => "/",
                        };
                        let right = r.wrap_if(r.precedence() <= p || matches!(r.kind, ExprKind::Neg(_)));
                        format!("{}{sym}{right}", l.wrap_if(l.precedence() < p))
                    }
                }
            }
        }
    }

    fn wrap_if(&self, cond: bool) -> String {
        if cond {
            format!("({})", self.render())
        } else {
            self.render()
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
