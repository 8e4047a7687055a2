use crate::arith::Rational;
use crate::engine::UpperBound;

use super::ast::{BinOp, Constant, Expr, ExprKind, Func};
use super::lexer::{tokenize, Span, Spanned, Token};
use super::{ParseError, Query, QueryKind, QueryOptions};

const ADD_BP: (u8, u8) = (10, 11);
const MUL_BP: (u8, u8) = (20, 21);
const NEG_BP: u8 = 30;
const POW_BP: (u8, u8) = (41, 40);

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].token
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].span
    }

    fn bump(&mut self) -> Spanned {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { position: self.span().start, message: message.into() })
    }

    fn expect(&mut self, token: Token, what: &str) -> Result<Span, ParseError> {
        if *self.peek() == token {
            Ok(self.bump().span)
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn expr(&mut self, min_bp: u8) -> Result<Expr, ParseError> {
        let mut lhs = self.prefix()?;
        loop {
            let (op, (l_bp, r_bp)) = match self.peek() {
                Token::Plus => (BinOp::Add, ADD_BP),
                Token::Minus => (BinOp::Sub, ADD_BP),
                Token::Star => (BinOp::Mul, MUL_BP),
                Token::Slash => (BinOp::Div, MUL_BP),
                Token::Caret => (BinOp::Pow, POW_BP),
                _ => break,
            };
            if l_bp <= min_bp {
                break;
            }
            self.bump();
            let rhs = self.expr(r_bp)?;
            let span = lhs.span.join(rhs.span);
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), span);
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Expr, ParseError> {
        let Spanned { token, span } = self.bump();
        match token {
            Token::Minus => {
                let operand = self.expr(NEG_BP)?;
                let span = span.join(operand.span);
                Ok(Expr::new(ExprKind::Neg(Box::new(operand)), span))
            }
            Token::Number(text) => Ok(Expr::new(ExprKind::Number(parse_decimal(&text), text), span)),
            Token::LParen => {
                let inner = self.expr(0)?;
                let close = self.expect(Token::RParen, "')'")?;
                Ok(Expr { span: span.join(close), ..inner })
            }
            Token::Ident(name) => self.ident(name, span),
            Token::Eof => Err(ParseError::Syntax { position: span.start, message: "unexpected end of input".into() }),
            other => Err(ParseError::Syntax { position: span.start, message: format!("unexpected token {other:?}") }),
        }
    }

    fn ident(&mut self, name: String, span: Span) -> Result<Expr, ParseError> {
        if let Some(func) = Func::from_name(&name) {
            self.expect(Token::LParen, "'(' after function name")?;
            let arg = self.expr(0)?;
            let close = self.expect(Token::RParen, "')'")?;
            return Ok(Expr::new(ExprKind::Call(func, Box::new(arg)), span.join(close)));
        }
        let kind = match name.as_str() {
            "u" | "n" => ExprKind::Var(name),
            "pi" => ExprKind::Const(Constant::Pi),
            "e" => ExprKind::Const(Constant::E),
            "theta" => ExprKind::Const(Constant::Theta),
            _ => return Err(ParseError::Syntax { position: span.start, message: format!("unknown identifier '{name}'") }),
        };
        Ok(Expr::new(kind, span))
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let negative = *self.peek() == Token::Minus;
        if negative {
            self.bump();
        }
        match self.peek().clone() {
            Token::Number(text) if !text.contains('.') => {
                let v: i64 = match text.parse() {
                    Ok(v) => v,
                    Err(_) => return self.error("integer out of range"),
                };
                self.bump();
                Ok(if negative { -v } else { v })
            }
            _ => self.error("expected an integer"),
        }
    }

    fn upper_bound(&mut self) -> Result<UpperBound, ParseError> {
        if let Token::Ident(name) = self.peek() {
            if name == "inf" || name == "infinity" {
                self.bump();
                return Ok(UpperBound::Infinity);
            }
        }
        self.integer().map(UpperBound::Finite)
    }

    /// `, v = a..b` (optional; defaults to u = 1..inf)
    fn range(&mut self) -> Result<(String, i64, UpperBound), ParseError> {
        let save = self.pos;
        if *self.peek() == Token::Comma {
            self.bump();
            if let Token::Ident(v) = self.peek().clone() {
                if v == "u" || v == "n" {
                    self.bump();
                    self.expect(Token::Equals, "'='")?;
                    let a = self.integer()?;
                    self.expect(Token::DotDot, "'..'")?;
                    let b = self.upper_bound()?;
                    return Ok((v, a, b));
                }
            }
            self.pos = save;
        }
        Ok(("u".into(), 1, UpperBound::Infinity))
    }

    /// Trailing `, theta = expr` bindings.
    fn bindings(&mut self) -> Result<Option<Expr>, ParseError> {
        let mut theta = None;
        while *self.peek() == Token::Comma {
            self.bump();
            match self.peek().clone() {
                Token::Ident(name) if name == "theta" => {
                    self.bump();
                    self.expect(Token::Equals, "'='")?;
                    theta = Some(self.expr(0)?);
                }
                _ => return self.error("expected a binding 'theta = ...'"),
            }
        }
        Ok(theta)
    }
}

/// Exact value of a decimal literal.
fn parse_decimal(text: &str) -> Rational {
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    let digits: num_bigint::BigInt = format!("{int}{frac}").parse().unwrap_or_default();
    let scale = num_bigint::BigInt::from(10).pow(frac.len() as u32);
    Rational::new(digits, scale)
}

/// Parses a bare expression.
pub fn parse_expr(input: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { tokens: tokenize(input)?, pos: 0 };
    let e = p.expr(0)?;
    if *p.peek() != Token::Eof {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

/// Parses a full query such as `sum (-1)^(u-1)*u, u=1..inf`.
pub fn parse(input: &str) -> Result<Query, ParseError> {
    let mut p = Parser { tokens: tokenize(input)?, pos: 0 };
    let keyword = match p.peek().clone() {
        Token::Ident(k) => k,
        _ => return p.error("expected a command: sum, limit, zeta, eta, factorial or verify"),
    };
    p.bump();
    let (kind, term) = match keyword.as_str() {
        "sum" | "verify" => {
            let term = p.expr(0)?;
            let (var, a, b) = p.range()?;
            let kind = if keyword == "sum" { QueryKind::Sum { var, a, b } } else { QueryKind::Verify { var, a, b } };
            (kind, Some(term))
        }
        "limit" => (QueryKind::Limit, Some(p.expr(0)?)),
        "zeta" => (QueryKind::Zeta(p.integer()?), None),
        "eta" => (QueryKind::Eta(p.integer()?), None),
        "factorial" => (QueryKind::Factorial(p.integer()?), None),
        other => {
            return Err(ParseError::Syntax { position: 0, message: format!("unknown command '{other}'") });
        }
    };
    let theta = p.bindings()?;
    if *p.peek() != Token::Eof {
        return p.error("unexpected trailing input");
    }
    Ok(Query { input: input.to_string(), kind, term, options: QueryOptions { theta, ..QueryOptions::default() } })
}
