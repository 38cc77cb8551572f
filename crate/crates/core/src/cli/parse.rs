//! Recursive-descent parser for polynomials, rational functions and
//! reciprocal sums.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | VAR | '(' expr ')' | 'sigma' '(' expr ')' | 'recip' '(' expr ')'
//! ```
//!
//! Positions in errors are 0-based character offsets.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kernel::{var_name, Polynomial, Rational, RationalFunction};
use crate::recip::{sigma, RecipSum};

/// A parsed value, in the narrowest form the text allows.
#[derive(Clone, Debug, PartialEq)]
pub enum Parsed {
    Poly(Polynomial),
    Rational(RationalFunction),
    Recip(RecipSum),
}

impl Parsed {
    /// The value as a canonical rational function.
    pub fn to_rational(&self) -> RationalFunction {
        match self {
            Parsed::Poly(p) => RationalFunction::from_poly(p.clone()),
            Parsed::Rational(r) => r.clone(),
            Parsed::Recip(a) => a.normalize(),
        }
    }

    fn constant(&self) -> Option<Rational> {
        match self {
            Parsed::Poly(p) if p.is_constant() => Some(p.constant_term()),
            _ => None,
        }
    }
}

impl fmt::Display for Parsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parsed::Poly(p) => write!(f, "{p}"),
            Parsed::Rational(r) => write!(f, "{r}"),
            Parsed::Recip(a) => write!(f, "{a}"),
        }
    }
}

/// Parses `text` in `Q[X_1..X_n]`, its fraction field, or as a reciprocal sum.
///
/// Variables are `X1..Xn`; for `n <= 3` also `X, Y, Z` and lower case.
pub fn parse_expression(text: &str, nvars: usize) -> Result<Parsed> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        nvars,
    };
    p.skip_ws();
    if p.pos == p.chars.len() {
        return Err(p.error("empty expression"));
    }
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected `{}`", p.chars[p.pos])));
    }
    Ok(v)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    nvars: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.into(),
        }
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

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Parsed> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let rhs = self.term()?;
                acc = add(acc, rhs)?;
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = add(acc, neg(rhs))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Parsed> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = mul(acc, rhs)?;
            } else if self.peek() == Some('/') {
                let at = self.pos;
                self.pos += 1;
                let rhs = self.unary()?;
                acc = div(acc, rhs).map_err(|e| match e {
                    Error::ZeroDenominator => Error::ZeroDenominator,
                    other => Error::Syntax {
                        position: at,
                        message: other.to_string(),
                    },
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Parsed> {
        if self.eat('-') {
            return Ok(neg(self.unary()?));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Parsed> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("exponent must be a nonnegative integer literal"));
        }
        let k: u32 = digits.parse().map_err(|_| Error::Syntax {
            position: start,
            message: "exponent too large".into(),
        })?;
        Ok(match base {
            Parsed::Poly(p) => Parsed::Poly(p.pow(k)),
            Parsed::Rational(r) => Parsed::Rational(r.pow(k as i64)?),
            Parsed::Recip(a) => Parsed::Recip(a.pow(k)),
        })
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<Parsed> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        if c.is_ascii_digit() {
            let d = self.digits();
            let n: BigInt = d.parse().expect("digits");
            return Ok(Parsed::Poly(Polynomial::constant(
                self.nvars,
                Rational::from_integer(n),
            )));
        }
        if self.eat('(') {
            let v = self.expr()?;
            self.expect(')')?;
            return Ok(v);
        }
        if c.is_ascii_alphabetic() {
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphanumeric() {
                self.pos += 1;
            }
            let name: String = self.chars[start..self.pos].iter().collect();
            return match name.as_str() {
                "sigma" => {
                    self.expect('(')?;
                    let v = self.expr()?;
                    self.expect(')')?;
                    Ok(Parsed::Rational(sigma(&v.to_rational())))
                }
                "recip" => {
                    self.expect('(')?;
                    let inner_start = self.pos;
                    let v = self.expr()?;
                    self.expect(')')?;
                    match v {
                        Parsed::Poly(f) if f.is_zero() => Err(Error::ZeroDenominator),
                        Parsed::Poly(f) => Ok(Parsed::Recip(RecipSum::single(f)?)),
                        _ => Err(Error::Syntax {
                            position: inner_start,
                            message: "recip expects a polynomial".into(),
                        }),
                    }
                }
                _ => match self.variable(&name) {
                    Some(i) => Ok(Parsed::Poly(Polynomial::var(self.nvars, i))),
                    None => Err(Error::UnknownVariable {
                        name,
                        position: start,
                    }),
                },
            };
        }
        Err(self.error(format!("unexpected `{c}`")))
    }

    fn variable(&self, name: &str) -> Option<usize> {
        (0..self.nvars).find(|&i| {
            let short = var_name(self.nvars, i);
            let long = format!("X{}", i + 1);
            name == short
                || name == short.to_lowercase()
                || name == long
                || name == long.to_lowercase()
        })
    }
}

fn neg(v: Parsed) -> Parsed {
    match v {
        Parsed::Poly(p) => Parsed::Poly(-&p),
        Parsed::Rational(r) => Parsed::Rational(-&r),
        Parsed::Recip(a) => Parsed::Recip(a.neg()),
    }
}

fn add(a: Parsed, b: Parsed) -> Result<Parsed> {
    // a nonzero constant c joins a reciprocal sum as recip(1/c)
    if let (Some(c), Parsed::Recip(x)) = (a.constant(), &b) {
        if !c.is_zero() {
            return Ok(Parsed::Recip(RecipSum::constant(x.nvars(), c)?.add(x)?));
        }
    }
    if let (Parsed::Recip(x), Some(c)) = (&a, b.constant()) {
        if !c.is_zero() {
            return Ok(Parsed::Recip(x.add(&RecipSum::constant(x.nvars(), c)?)?));
        }
    }
    Ok(match (a, b) {
        (Parsed::Poly(f), Parsed::Poly(g)) => Parsed::Poly(f.try_add(&g)?),
        (Parsed::Recip(x), Parsed::Recip(y)) => Parsed::Recip(x.add(&y)?),
        (a, b) => Parsed::Rational(a.to_rational().try_add(&b.to_rational())?),
    })
}

fn mul(a: Parsed, b: Parsed) -> Result<Parsed> {
    if let (Some(c), Parsed::Recip(x)) = (a.constant(), &b) {
        return Ok(scale_recip(x, &c));
    }
    if let (Parsed::Recip(x), Some(c)) = (&a, b.constant()) {
        return Ok(scale_recip(x, &c));
    }
    Ok(match (a, b) {
        (Parsed::Poly(f), Parsed::Poly(g)) => Parsed::Poly(f.try_mul(&g)?),
        (Parsed::Recip(x), Parsed::Recip(y)) => Parsed::Recip(x.mul(&y)?),
        (a, b) => Parsed::Rational(a.to_rational().try_mul(&b.to_rational())?),
    })
}

fn scale_recip(x: &RecipSum, c: &Rational) -> Parsed {
    if c.is_zero() {
        Parsed::Poly(Polynomial::zero(x.nvars()))
    } else {
        Parsed::Recip(x.scale(c).expect("nonzero scale"))
    }
}

fn div(a: Parsed, b: Parsed) -> Result<Parsed> {
    if let Some(c) = b.constant() {
        if c.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let inv = c.recip();
        return Ok(match a {
            Parsed::Poly(f) => Parsed::Poly(f.scale(&inv)),
            Parsed::Rational(r) => Parsed::Rational(r.scale(&inv)),
            Parsed::Recip(x) => scale_recip(&x, &inv),
        });
    }
    let den = b.to_rational();
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Parsed::Rational(a.to_rational().try_div(&den)?))
}
