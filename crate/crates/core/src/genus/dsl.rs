//! Ramification-type text such as `[l],[a,l-a],[1^{l-2},2] where l=21,a=1`.
//!
//! Parts and multiplicities are linear expressions in the declared
//! parameters with rational coefficients (`(l-3)/2` is allowed); every
//! evaluated part and multiplicity must be a nonnegative integer.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

type Q = Ratio<i64>;

/// A partition template: `(part, multiplicity)` expressions.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionTemplate {
    pub terms: Vec<(Expr, Expr)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, env: &BTreeMap<String, i64>) -> Result<Q> {
        Ok(match self {
            Expr::Num(n) => Q::from_integer(*n),
            Expr::Var(v) => Q::from_integer(
                *env.get(v)
                    .ok_or_else(|| Error::input(format!("parameter {v} has no value")))?,
            ),
            Expr::Neg(e) => -e.eval(env)?,
            Expr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
            Expr::Div(a, b) => {
                let d = b.eval(env)?;
                if d.is_zero() {
                    return Err(Error::input("division by zero in ramification expression"));
                }
                a.eval(env)? / d
            }
        })
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Add(a, b) => write!(f, "({a}+{b})"),
            Expr::Sub(a, b) => write!(f, "({a}-{b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "({a})/{b}"),
        }
    }
}

/// Parsed ramification text: templates plus the `where` assignments.
#[derive(Debug, Clone, PartialEq)]
pub struct RamificationSpec {
    pub partitions: Vec<PartitionTemplate>,
    pub params: BTreeMap<String, i64>,
}

/// Evaluates one template. Errors name the expression that failed to be a
/// nonnegative integer.
pub fn instantiate(
    template: &PartitionTemplate,
    env: &BTreeMap<String, i64>,
) -> Result<Vec<usize>> {
    let mut parts = Vec::new();
    for (part, mult) in &template.terms {
        let p = integral(part, env)?;
        let m = integral(mult, env)?;
        if p == 0 && m > 0 {
            return Err(Error::input(format!("part {part} evaluates to 0")));
        }
        parts.extend(std::iter::repeat_n(p, m));
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(parts)
}

fn integral(e: &Expr, env: &BTreeMap<String, i64>) -> Result<usize> {
    let v = e.eval(env)?;
    if !v.is_integer() {
        return Err(Error::input(format!("exponent {e} = {v} is not integral")));
    }
    if v.is_negative() {
        return Err(Error::input(format!("exponent {e} = {v} is negative")));
    }
    Ok(v.to_integer().to_usize().unwrap())
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

pub fn parse(text: &str) -> Result<RamificationSpec> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        text,
    };
    let spec = p.spec()?;
    Ok(spec)
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl std::fmt::Display) -> Result<T> {
        Err(Error::parse(1, self.pos + 1, format!("{msg} in {:?}", self.text)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {c:?}"))
        }
    }

    fn spec(&mut self) -> Result<RamificationSpec> {
        let mut partitions = vec![self.partition()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            partitions.push(self.partition()?);
        }
        let mut params = BTreeMap::new();
        if self.peek().is_some() {
            let word = self.ident();
            if word != "where" {
                return self.err("expected `where` or end of input");
            }
            loop {
                let name = self.ident();
                if name.is_empty() {
                    return self.err("expected parameter name");
                }
                self.expect('=')?;
                let neg = if self.peek() == Some('-') {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                let v = self.number()?;
                params.insert(name, if neg { -v } else { v });
                if self.peek() == Some(',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            if self.peek().is_some() {
                return self.err("trailing input");
            }
        }
        Ok(RamificationSpec { partitions, params })
    }

    fn partition(&mut self) -> Result<PartitionTemplate> {
        self.expect('[')?;
        let mut terms = Vec::new();
        loop {
            let part = self.expr()?;
            let mult = if self.peek() == Some('^') {
                self.pos += 1;
                if self.peek() == Some('{') {
                    self.pos += 1;
                    let e = self.expr()?;
                    self.expect('}')?;
                    e
                } else {
                    self.atom()?
                }
            } else {
                Expr::Num(1)
            };
            terms.push((part, mult));
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    break;
                }
                _ => return self.err("expected ',' or ']'"),
            }
        }
        Ok(PartitionTemplate { terms })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some('-') => {
                    self.pos += 1;
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
                Some('*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some('/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(c) if c.is_ascii_alphabetic() || c == '(' => {
                    // implicit product such as `2l`
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Num(self.number()?)),
            Some(c) if c.is_ascii_alphabetic() => Ok(Expr::Var(self.ident())),
            _ => self.err("expected a number, parameter or '('"),
        }
    }

    fn number(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().or_else(|_| self.err("expected a number"))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }
}
