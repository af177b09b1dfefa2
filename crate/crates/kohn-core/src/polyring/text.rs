//! Text syntax: `z1^2 - 3/2*z2*z3`, variables `z1..zN` or `w1..wN`.

use super::monomial::Monomial;
use super::poly::{Poly, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone)]
enum Expr {
    Num(Rational),
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    family: Option<u8>,
    max_var: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(b'^') = self.peek() {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.err("exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    return Ok(Expr::Num(Rational::new(n, d)));
                }
                Ok(Expr::Num(Rational::from_integer(n)))
            }
            Some(c @ (b'z' | b'w')) => {
                if let Some(f) = self.family {
                    if f != c {
                        return Err(self.err("cannot mix z and w variables"));
                    }
                }
                self.family = Some(c);
                self.pos += 1;
                let idx = self.integer()?;
                let idx: usize = idx
                    .try_into()
                    .map_err(|_| self.err("variable index too large"))?;
                if idx == 0 {
                    return Err(self.err("variables are numbered from 1"));
                }
                self.max_var = self.max_var.max(idx);
                Ok(Expr::Var(idx - 1))
            }
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn eval(e: &Expr, n: usize) -> Poly {
    match e {
        Expr::Num(c) => Poly::constant(n, c.clone()),
        Expr::Var(i) => Poly::var(n, *i).expect("index checked at parse time"),
        Expr::Add(a, b) => &eval(a, n) + &eval(b, n),
        Expr::Sub(a, b) => &eval(a, n) - &eval(b, n),
        Expr::Mul(a, b) => &eval(a, n) * &eval(b, n),
        Expr::Neg(a) => -&eval(a, n),
        Expr::Pow(a, k) => eval(a, n).pow(*k),
    }
}

fn parse_expr(s: &str) -> Result<(Expr, usize)> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
        family: None,
        max_var: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok((e, p.max_var))
}

/// Parse one polynomial. With `nvars = None` the ring size is the largest
/// variable index that occurs (at least 1).
pub fn parse_poly(s: &str, nvars: Option<usize>) -> Result<Poly> {
    let (e, max_var) = parse_expr(s)?;
    let n = resolve_nvars(max_var, nvars)?;
    Ok(eval(&e, n))
}

/// Parse a comma-separated list into a common ring.
pub fn parse_poly_list(s: &str, nvars: Option<usize>) -> Result<Vec<Poly>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push((start, &s[start..]));
    let mut exprs = Vec::new();
    let mut max_var = 0;
    for (offset, part) in parts {
        if part.trim().is_empty() {
            return Err(Error::Parse {
                pos: offset,
                msg: "empty polynomial in list".into(),
            });
        }
        let (e, m) = parse_expr(part).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse {
                pos: pos + offset,
                msg,
            },
            other => other,
        })?;
        max_var = max_var.max(m);
        exprs.push(e);
    }
    let n = resolve_nvars(max_var, nvars)?;
    Ok(exprs.iter().map(|e| eval(e, n)).collect())
}

fn resolve_nvars(max_var: usize, nvars: Option<usize>) -> Result<usize> {
    match nvars {
        Some(n) if n < max_var => Err(Error::IndexOutOfRange {
            index: max_var - 1,
            nvars: n,
        }),
        Some(n) => Ok(n),
        None => Ok(max_var.max(1)),
    }
}

impl Poly {
    /// Render with the given variable letter, highest degree terms first.
    pub fn to_text(&self, letter: char) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&Monomial, &Rational)> = self.terms().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| b.0.cmp(a.0)));
        let mut out = String::new();
        for (k, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("{letter}{}", i + 1)
                    } else {
                        format!("{letter}{}^{e}", i + 1)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text('z'))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.nvars(), self.to_text('z'))
    }
}
