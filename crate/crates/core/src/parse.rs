//! Recursive-descent parser for the expression grammar shared by
//! polynomial and algebra-element input:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | IDENT | '(' expr ')'
//! ```
//!
//! Identifiers are single letters; which ones are legal depends on the
//! evaluator (`h` and `u` for polynomials, additionally `x` and `y` for
//! algebra elements).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(char),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Token::Int(text[start..i].parse().expect("digits")), start));
                continue;
            }
            'a'..='z' | 'A'..='Z' => {
                if i + 1 < bytes.len() && bytes[i + 1].is_ascii_alphanumeric() {
                    return Err(syntax(start, "identifiers are single letters"));
                }
                Token::Ident(c)
            }
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '^' => Token::Caret,
            '/' => Token::Slash,
            '(' => Token::LParen,
            ')' => Token::RParen,
            other => return Err(syntax(start, &format!("unexpected character '{other}'"))),
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

fn syntax(offset: usize, message: &str) -> Error {
    Error::Syntax { offset, message: message.to_string() }
}

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// `num / den` literal.
    Num(BigInt, BigInt),
    /// Single-letter identifier with its byte offset.
    Var(char, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Token::Star) {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Token::Minus) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.bump();
            let at = self.offset();
            return match self.bump() {
                Some(Token::Int(n)) => {
                    let e = u32::try_from(&n).map_err(|_| syntax(at, "exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(syntax(at, "expected a nonnegative integer exponent")),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.bump() {
            Some(Token::Int(n)) => {
                if self.peek() == Some(&Token::Slash) {
                    self.bump();
                    let den_at = self.offset();
                    match self.bump() {
                        Some(Token::Int(d)) if !d.is_zero() => Ok(Expr::Num(n, d)),
                        Some(Token::Int(_)) => Err(syntax(den_at, "zero denominator")),
                        _ => Err(syntax(den_at, "expected an integer denominator")),
                    }
                } else {
                    Ok(Expr::Num(n, BigInt::one()))
                }
            }
            Some(Token::Ident(c)) => Ok(Expr::Var(c, at)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(syntax(close, "expected ')'")),
                }
            }
            Some(_) => Err(syntax(at, "expected a number, identifier or '('")),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses `text` into an expression tree.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, end: text.len() };
    let expr = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(syntax(parser.offset(), "unexpected trailing input"));
    }
    Ok(expr)
}

/// Target of expression evaluation.
pub trait Evaluator {
    type Value: Clone;

    fn number(&self, num: &BigInt, den: &BigInt) -> Result<Self::Value>;
    fn variable(&self, name: char, offset: usize) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn neg(&self, a: Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn one(&self) -> Self::Value;

    fn pow(&self, a: Self::Value, e: u32) -> Result<Self::Value> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(acc, a.clone())?;
        }
        Ok(acc)
    }
}

impl Expr {
    pub fn evaluate<E: Evaluator>(&self, ev: &E) -> Result<E::Value> {
        match self {
            Expr::Num(n, d) => ev.number(n, d),
            Expr::Var(c, at) => ev.variable(*c, *at),
            Expr::Add(a, b) => ev.add(a.evaluate(ev)?, b.evaluate(ev)?),
            Expr::Sub(a, b) => ev.sub(a.evaluate(ev)?, b.evaluate(ev)?),
            Expr::Neg(a) => ev.neg(a.evaluate(ev)?),
            Expr::Mul(a, b) => ev.mul(a.evaluate(ev)?, b.evaluate(ev)?),
            Expr::Pow(a, e) => ev.pow(a.evaluate(ev)?, *e),
        }
    }
}

struct PolyEvaluator<'a> {
    field: &'a Field,
    var: char,
}

impl Evaluator for PolyEvaluator<'_> {
    type Value = Poly;

    fn number(&self, num: &BigInt, den: &BigInt) -> Result<Poly> {
        Ok(Poly::constant(self.field.from_ratio(num, den)?))
    }

    fn variable(&self, name: char, offset: usize) -> Result<Poly> {
        if name == self.var {
            Ok(Poly::h(self.field))
        } else if name == 'u' {
            self.field
                .generator()
                .map(Poly::constant)
                .map_err(|_| syntax(offset, &format!("'u' is not defined over {}", self.field)))
        } else {
            Err(syntax(offset, &format!("unknown variable '{name}'")))
        }
    }

    fn add(&self, a: Poly, b: Poly) -> Result<Poly> {
        Ok(&a + &b)
    }

    fn sub(&self, a: Poly, b: Poly) -> Result<Poly> {
        Ok(&a - &b)
    }

    fn neg(&self, a: Poly) -> Result<Poly> {
        Ok(-&a)
    }

    fn mul(&self, a: Poly, b: Poly) -> Result<Poly> {
        Ok(&a * &b)
    }

    fn one(&self) -> Poly {
        Poly::one(self.field)
    }

    fn pow(&self, a: Poly, mut e: u32) -> Result<Poly> {
        let mut acc = Poly::one(self.field);
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }
}

/// Parses a polynomial in `h` over `field`. Over extension fields the
/// generator `u` may appear in coefficients.
pub fn parse_poly(text: &str, field: &Field) -> Result<Poly> {
    parse_poly_in_var(text, field, 'h')
}

pub(crate) fn parse_poly_in_var(text: &str, field: &Field, var: char) -> Result<Poly> {
    parse_expr(text)?.evaluate(&PolyEvaluator { field, var })
}
