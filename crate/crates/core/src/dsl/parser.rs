//! Recursive-descent parser producing a spanned syntax tree.
//!
//! ```text
//! expr      := wedgeTerm (("+" | "-") wedgeTerm)*
//! wedgeTerm := prod ("^" prod)*
//! prod      := atom ("*" atom)*
//! atom      := RATIONAL | VAR | COVEC | VEC | "(" expr ")" | "(" expr ";" expr ")" | "-" atom
//! ```

use crate::scalar::Rational;

use super::lexer::{tokenize, Token};
use super::{DslError, Span};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Number(Rational),
    Var(usize),
    Covec(usize),
    Vec(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
    /// `(vector ; form)`
    Pair(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl Expr {
    fn new(kind: ExprKind, span: Span) -> Box<Expr> {
        Box::new(Expr { kind, span })
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, DslError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let expr = parser.expr()?;
    parser.expect(&Token::Eof, "an operator or end of input")?;
    Ok(*expr)
}

struct Parser {
    tokens: Vec<(Token, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> (Token, Span) {
        let tok = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &str) -> DslError {
        DslError::Parse {
            pos: self.span().start,
            expected: expected.into(),
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, tok: &Token, expected: &str) -> Result<Span, DslError> {
        if self.peek() == tok {
            Ok(self.bump().1)
        } else {
            Err(self.error(expected))
        }
    }

    fn expr(&mut self) -> Result<Box<Expr>, DslError> {
        let mut lhs = self.wedge_term()?;
        loop {
            let negate = match self.peek() {
                Token::Plus => false,
                Token::Minus => true,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.wedge_term()?;
            let span = lhs.span.to(rhs.span);
            lhs = if negate {
                Expr::new(ExprKind::Sub(lhs, rhs), span)
            } else {
                Expr::new(ExprKind::Add(lhs, rhs), span)
            };
        }
    }

    fn wedge_term(&mut self) -> Result<Box<Expr>, DslError> {
        let mut lhs = self.prod()?;
        while self.peek() == &Token::Caret {
            self.bump();
            let rhs = self.prod()?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr::new(ExprKind::Wedge(lhs, rhs), span);
        }
        Ok(lhs)
    }

    fn prod(&mut self) -> Result<Box<Expr>, DslError> {
        let mut lhs = self.atom()?;
        while self.peek() == &Token::Star {
            self.bump();
            let rhs = self.atom()?;
            let span = lhs.span.to(rhs.span);
            lhs = Expr::new(ExprKind::Mul(lhs, rhs), span);
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<Box<Expr>, DslError> {
        let span = self.span();
        let kind = match self.peek().clone() {
            Token::Number(r) => ExprKind::Number(r),
            Token::Var(i) => ExprKind::Var(i),
            Token::Covec(i) => ExprKind::Covec(i),
            Token::Vec(i) => ExprKind::Vec(i),
            Token::Minus => {
                self.bump();
                let inner = self.atom()?;
                let span = span.to(inner.span);
                return Ok(Expr::new(ExprKind::Neg(inner), span));
            }
            Token::LParen => {
                self.bump();
                let first = self.expr()?;
                if self.peek() == &Token::Semi {
                    self.bump();
                    let second = self.expr()?;
                    let close = self.expect(&Token::RParen, "')' closing the section")?;
                    return Ok(Expr::new(ExprKind::Pair(first, second), span.to(close)));
                }
                let close = self.expect(&Token::RParen, "')' or ';'")?;
                // parentheses only group; keep the outer span for diagnostics
                let mut inner = first;
                inner.span = span.to(close);
                return Ok(inner);
            }
            _ => return Err(self.error("a number, x<i>, dx<i>, @<i>, '(' or '-'")),
        };
        self.bump();
        Ok(Expr::new(kind, span))
    }
}
