//! Canonical text grammar for field elements.
//!
//! Terms are written in descending degree, `^` for powers, `*` for products
//! and `+` between terms, e.g. `t^3+t+1`. Fractions are `(num)/(den)`.
//! Coefficients in GF(2^m) are polynomials in `w`. The parser accepts the
//! same language plus arbitrary parenthesised `+ - * / ^` expressions.

use super::bivariate::{tower_to_bivariate, Bi};
use super::field::Field;
use super::gf::{render_bits, BinaryField};
use super::poly::Poly;
use super::ratfunc::{RatT, Tower};
use crate::error::{Error, Result};

fn coef_factor<F: BinaryField>(c: &F, alone: bool) -> Option<String> {
    let s = render_bits(c.bits());
    if c.is_one() && !alone {
        return None;
    }
    if !alone && s.contains('+') {
        Some(format!("({s})"))
    } else {
        Some(s)
    }
}

fn var_factor(name: &str, e: usize) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

fn render_term<F: BinaryField>(c: &F, vars: &[(&str, usize)]) -> String {
    let powers: Vec<String> = vars.iter().filter_map(|&(n, e)| var_factor(n, e)).collect();
    let mut parts = Vec::new();
    if let Some(cf) = coef_factor(c, powers.is_empty()) {
        parts.push(cf);
    }
    parts.extend(powers);
    parts.join("*")
}

/// Render a univariate polynomial in the variable `var`.
pub fn render_poly<F: BinaryField>(p: &Poly<F>, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| render_term(c, &[(var, i)]))
        .collect::<Vec<_>>()
        .join("+")
}

fn render_bi<F: BinaryField>(p: &Bi<F>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (i, tp) in p.terms.iter().enumerate().rev() {
        for (j, c) in tp.coeffs().iter().enumerate().rev() {
            if !c.is_zero() {
                terms.push(render_term(c, &[("t", j), ("x", i)]));
            }
        }
    }
    terms.join("+")
}

fn fraction(num: String, den: String, den_is_one: bool) -> String {
    if den_is_one {
        num
    } else {
        format!("({num})/({den})")
    }
}

/// Render an element of `F(v)` for the named variable.
pub fn render_ratfunc<F: BinaryField>(r: &RatT<F>, var: &str) -> String {
    fraction(
        render_poly(r.num(), var),
        render_poly(r.den(), var),
        r.den().is_one(),
    )
}

/// Render an element of `F(t)(x)` as a single fraction over `F[t, x]`.
pub fn render_tower<F: BinaryField>(r: &Tower<F>) -> String {
    let (n, d) = tower_to_bivariate(r);
    let den_is_one = d.terms.len() == 1 && d.terms[0].is_one();
    fraction(render_bi(&n), render_bi(&d), den_is_one)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
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
            let lit: String = chars[start..i].iter().collect();
            let n = lit
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("integer literal `{lit}` too large")))?;
            out.push(Tok::Num(n));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser<'a, V> {
    toks: Vec<Tok>,
    pos: usize,
    resolve: &'a dyn Fn(&str) -> Option<V>,
}

impl<V: Field> Parser<'_, V> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<V> {
        let mut acc = self.term()?;
        while self.eat_op('+') || self.eat_op('-') {
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<V> {
        let mut acc = self.factor()?;
        loop {
            if self.eat_op('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat_op('/') {
                let d = self.factor()?;
                acc = acc.div(&d).map_err(|_| Error::Parse("division by zero".into()))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<V> {
        let base = self.atom()?;
        if self.eat_op('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(e)) => {
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("exponent must be a nonnegative integer".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<V> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(if n % 2 == 1 { V::one() } else { V::zero() })
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                (self.resolve)(&name).ok_or_else(|| Error::Parse(format!("unknown symbol `{name}`")))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat_op(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(v)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                self.factor()
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parse an expression, resolving identifiers through `resolve`.
pub fn parse_expr<V: Field>(input: &str, resolve: &dyn Fn(&str) -> Option<V>) -> Result<V> {
    let toks = tokenize(input)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        resolve,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input after position {} in `{input}`",
            p.pos
        )));
    }
    Ok(v)
}

/// Generator `w` of GF(2^m); only meaningful for m >= 2.
pub fn resolve_w<F: BinaryField>(name: &str) -> Option<F> {
    (name == "w" && F::degree() >= 2).then(F::generator)
}

pub fn parse_gf<F: BinaryField>(s: &str) -> Result<F> {
    parse_expr(s, &resolve_w::<F>)
}

/// Parse an element of `F(v)` where `v` is named `var`.
pub fn parse_ratfunc<F: BinaryField>(s: &str, var: &str) -> Result<RatT<F>> {
    parse_expr(s, &|name| {
        if name == var {
            Some(RatT::var())
        } else {
            resolve_w::<F>(name).map(RatT::constant)
        }
    })
}

pub fn parse_tower<F: BinaryField>(s: &str) -> Result<Tower<F>> {
    parse_expr(s, &|name| match name {
        "t" => Some(Tower::constant(RatT::var())),
        "x" => Some(Tower::var()),
        _ => resolve_w::<F>(name).map(|c| Tower::constant(RatT::constant(c))),
    })
}
