//! Query language: `sum <term>, u=a..b`, `limit <term>`, `zeta k`, `eta k`,
//! `factorial a`, `verify <term>, u=a..b`.

mod ast;
mod eval;
mod lexer;
mod lower;
mod parse;

pub use ast::{BinOp, Constant, Expr, ExprKind, Func};
pub use eval::{eval_exact, eval_float, BoundExpr};
pub use lexer::Span;
pub use lower::{constant, lower, lower_choice, lower_in, Env, ModeChoice, Num};
pub use parse::{parse, parse_expr};

use thiserror::Error;

use crate::engine::UpperBound;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unsupported term: {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum QueryKind {
    Sum { var: String, a: i64, b: UpperBound },
    Limit,
    Zeta(i64),
    Eta(i64),
    Factorial(i64),
    /// A sum checked against the numeric oracles.
    Verify { var: String, a: i64, b: UpperBound },
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct QueryOptions {
    pub mode: ModeChoice,
    pub tolerance: Option<f64>,
    pub theta: Option<Expr>,
    /// Explicit primitive for terms outside the exp-poly class.
    pub primitive: Option<Expr>,
    pub show_primitive: bool,
    pub verify: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Query {
    pub input: String,
    pub kind: QueryKind,
    pub term: Option<Expr>,
    pub options: QueryOptions,
}

#[cfg(test)]
mod tests;
