//! Recursive-descent parser for scalar and algebra expressions.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' integer)?
//! atom  := integer | identifier | '(' expr ')'
//! ```
//!
//! Products keep their factor order, so the same tree evaluates correctly in
//! the noncommutative algebra.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    /// Decimal literal, kept as text so it can be reduced mod any prime.
    Int(String),
    Var { name: String, position: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u64),
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
    End,
}

struct Parser<'s> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    src: &'s str,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax { position, message: message.into() }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
            }
            out.push((Tok::Int(s), i));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                chars.next();
            }
            out.push((Tok::Ident(s), i));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            chars.next();
        } else {
            return Err(syntax(i, format!("unexpected character `{c}`")));
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self) -> Error {
        match self.peek() {
            Tok::End => syntax(self.offset(), "unexpected end of input"),
            _ => {
                let at = self.offset();
                let rest: String = self.src[at..].chars().take(8).collect();
                syntax(at, format!("unexpected `{rest}`"))
            }
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Sym('/') => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Sym('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Int(s) => {
                let at = self.offset();
                self.bump();
                let e = s.parse::<u64>().map_err(|_| syntax(at, "exponent too large"))?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            Tok::End => Err(syntax(self.offset(), "expected a nonnegative integer exponent, found end of input")),
            _ => Err(syntax(self.offset(), "expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(s) => {
                self.bump();
                Ok(Expr::Int(s))
            }
            Tok::Ident(name) => {
                let (_, position) = self.bump();
                Ok(Expr::Var { name, position })
            }
            Tok::Sym('(') => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::Sym(')') {
                    return Err(self.unexpected());
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected()),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut parser = Parser { toks: tokenize(src)?, pos: 0, src };
    if *parser.peek() == Tok::End {
        return Err(syntax(0, "empty expression"));
    }
    let e = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(parser.unexpected());
    }
    Ok(e)
}

/// What an expression tree is evaluated into.
pub trait Evaluate: Sized {
    type Out;

    fn int(&self, digits: &str) -> Self::Out;
    fn var(&self, name: &str, position: usize) -> Result<Self::Out>;
    fn add(&self, x: Self::Out, y: Self::Out) -> Self::Out;
    fn sub(&self, x: Self::Out, y: Self::Out) -> Self::Out;
    fn neg(&self, x: Self::Out) -> Self::Out;
    fn mul(&self, x: Self::Out, y: Self::Out) -> Self::Out;
    fn div(&self, x: Self::Out, y: Self::Out) -> Result<Self::Out>;
    fn pow(&self, x: Self::Out, e: u64) -> Self::Out;

    fn eval(&self, e: &Expr) -> Result<Self::Out> {
        Ok(match e {
            Expr::Int(s) => self.int(s),
            Expr::Var { name, position } => self.var(name, *position)?,
            Expr::Neg(x) => {
                let x = self.eval(x)?;
                self.neg(x)
            }
            Expr::Add(x, y) => {
                let (x, y) = (self.eval(x)?, self.eval(y)?);
                self.add(x, y)
            }
            Expr::Sub(x, y) => {
                let (x, y) = (self.eval(x)?, self.eval(y)?);
                self.sub(x, y)
            }
            Expr::Mul(x, y) => {
                let (x, y) = (self.eval(x)?, self.eval(y)?);
                self.mul(x, y)
            }
            Expr::Div(x, y) => {
                let (x, y) = (self.eval(x)?, self.eval(y)?);
                self.div(x, y)?
            }
            Expr::Pow(x, n) => {
                let x = self.eval(x)?;
                self.pow(x, *n)
            }
        })
    }
}

/// Reduces a decimal literal modulo `p`.
pub fn literal_mod(digits: &str, p: u32) -> i64 {
    digits
        .bytes()
        .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p as u64) as i64
}

/// Named scalar values usable inside expressions, e.g. `l := a`.
pub type Bindings<S> = HashMap<String, S>;

pub struct ScalarContext<'a, S> {
    pub field: FieldDescriptor,
    pub bindings: Option<&'a Bindings<S>>,
}

impl<S: Scalar> Evaluate for ScalarContext<'_, S> {
    type Out = S;

    fn int(&self, digits: &str) -> S {
        S::from_int(&self.field, literal_mod(digits, self.field.prime()))
    }

    fn var(&self, name: &str, position: usize) -> Result<S> {
        match name {
            "a" => Ok(S::variable(&self.field, 'a')),
            "b" => Ok(S::variable(&self.field, 'b')),
            _ => match self.bindings.and_then(|b| b.get(name)) {
                Some(v) => Ok(v.clone()),
                None => Err(Error::Syntax { position, message: format!("unknown symbol `{name}`") }),
            },
        }
    }

    fn add(&self, x: S, y: S) -> S {
        x.add(&y)
    }

    fn sub(&self, x: S, y: S) -> S {
        x.sub(&y)
    }

    fn neg(&self, x: S) -> S {
        x.neg()
    }

    fn mul(&self, x: S, y: S) -> S {
        x.mul(&y)
    }

    fn div(&self, x: S, y: S) -> Result<S> {
        x.div(&y)
    }

    fn pow(&self, x: S, e: u64) -> S {
        x.pow(e)
    }
}

/// Parses a scalar in `a`, `b` over `field`.
pub fn parse_scalar<S: Scalar>(text: &str, field: &FieldDescriptor) -> Result<S> {
    parse_scalar_with(text, field, None)
}

pub fn parse_scalar_with<S: Scalar>(text: &str, field: &FieldDescriptor, bindings: Option<&Bindings<S>>) -> Result<S> {
    let e = parse_expr(text)?;
    ScalarContext { field: *field, bindings }.eval(&e)
}
