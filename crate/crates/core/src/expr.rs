//! Recursive-descent parser for the element expression grammar shared by
//! scalars, free-algebra elements and presentation files.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | name | 'sqrt' '(' integer ')' | '(' expr ')'
//! ```
//! Targets decide which divisors they accept; most allow only constants.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::field::{FieldError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownLetter(String),
    #[error("division by a non-constant expression")]
    NonConstantDivisor,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Values an expression can evaluate into.
pub trait ExprTarget: Sized + Clone {
    type Ctx;
    fn constant(ctx: &Self::Ctx, q: &BigRational) -> Result<Self, ParseError>;
    fn sqrt_of(ctx: &Self::Ctx, d: i64) -> Result<Self, ParseError>;
    fn letter(ctx: &Self::Ctx, name: &str) -> Result<Self, ParseError>;
    fn expr_add(self, other: Self) -> Result<Self, ParseError>;
    fn expr_mul(self, other: Self) -> Result<Self, ParseError>;
    fn expr_neg(self) -> Self;
    fn as_scalar(&self) -> Option<Scalar>;
    fn expr_scale(self, s: &Scalar) -> Result<Self, ParseError>;

    /// Division; by default only constant divisors are accepted.
    fn expr_div(self, other: Self) -> Result<Self, ParseError> {
        let s = other.as_scalar().ok_or(ParseError::NonConstantDivisor)?;
        self.expr_scale(&s.inv()?)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().unwrap()), start + 1));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Name(chars[start..i].iter().collect()), start + 1));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i + 1));
            i += 1;
        } else {
            return Err(ParseError::Syntax { col: i + 1, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a, T: ExprTarget> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
    ctx: &'a T::Ctx,
}

impl<'a, T: ExprTarget> Parser<'a, T> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn err<R>(&self, msg: impl Into<String>) -> Result<R, ParseError> {
        Err(ParseError::Syntax { col: self.col(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<T, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.expr_add(self.term()?)?;
            } else if self.eat('-') {
                acc = acc.expr_add(self.term()?.expr_neg())?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Name(_)) | Some(Tok::Sym('(')))
    }

    fn term(&mut self) -> Result<T, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.expr_mul(self.unary()?)?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.expr_div(d)?;
            } else if self.starts_factor() {
                acc = acc.expr_mul(self.power()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<T, ParseError> {
        if self.eat('-') {
            Ok(self.unary()?.expr_neg())
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<T, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let Some(Tok::Int(n)) = self.peek().cloned() else {
                return self.err("expected a non-negative integer exponent");
            };
            self.pos += 1;
            let n: u32 = n.try_into().map_err(|_| ParseError::Syntax { col: self.col(), msg: "exponent too large".into() })?;
            let mut acc = T::constant(self.ctx, &BigRational::from_integer(1.into()))?;
            for _ in 0..n {
                acc = acc.expr_mul(base.clone())?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<T, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                T::constant(self.ctx, &BigRational::from_integer(n))
            }
            Some(Tok::Name(name)) if name == "sqrt" && self.toks.get(self.pos + 1).map(|t| &t.0) == Some(&Tok::Sym('(')) => {
                self.pos += 2;
                let neg = self.eat('-');
                let Some(Tok::Int(n)) = self.peek().cloned() else {
                    return self.err("expected an integer inside sqrt(...)");
                };
                self.pos += 1;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                let n: i64 = n.try_into().map_err(|_| ParseError::Syntax { col: self.col(), msg: "radicand too large".into() })?;
                T::sqrt_of(self.ctx, if neg { -n } else { n })
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                T::letter(self.ctx, &name)
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` into a `T` using context `ctx`.
pub fn parse<T: ExprTarget>(text: &str, ctx: &T::Ctx) -> Result<T, ParseError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(ParseError::Syntax { col: 1, msg: "empty expression".into() });
    }
    let mut p = Parser::<T> { toks, pos: 0, end_col: text.chars().count() + 1, ctx };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}
