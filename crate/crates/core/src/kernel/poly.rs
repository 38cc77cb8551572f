use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// The integer `n` as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Exponent vector of a monomial. Ordered graded-lexicographically with
/// `X1 > X2 > ... > Xn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(pub Vec<u32>);

impl Exponents {
    pub fn zero(nvars: usize) -> Self {
        Exponents(vec![0; nvars])
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Exponents) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn checked_sub(&self, other: &Exponents) -> Option<Exponents> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Exponents)
    }

    fn plus(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Printable name of variable `i` (0-based) in a ring with `nvars` variables.
pub fn var_name(nvars: usize, i: usize) -> String {
    if nvars <= 3 {
        ["X", "Y", "Z"][i].to_string()
    } else {
        format!("X{}", i + 1)
    }
}

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are keyed by exponent vector in graded-lex order; zero coefficients
/// are never stored, so the zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, Exponents::zero(nvars), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(c.into()))
    }

    /// The variable `X_{i+1}` (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, Exponents(e), Rational::one())
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: Rational) -> Self {
        assert_eq!(exps.0.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Polynomial { nvars, terms }
    }

    /// `X^exps` with coefficient one.
    pub fn power_product(exps: &[u32]) -> Self {
        Self::monomial(exps.len(), Exponents(exps.to_vec()), Rational::one())
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut out = Polynomial::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            out.add_term(Exponents(e), c);
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        match self.terms.len() {
            0 => true,
            1 => self.terms.keys().next().unwrap().total() == 0,
            _ => false,
        }
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Exponents::zero(self.nvars))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms from the leading (graded-lex largest) monomial down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Exponents(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(e, _)| e.total())
    }

    /// Smallest total degree of any term (the order at the origin).
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponents::total).min()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e.0[i]).max().unwrap_or(0)
    }

    /// Per-variable degrees.
    pub fn degrees(&self) -> Vec<u32> {
        (0..self.nvars).map(|i| self.degree_in(i)).collect()
    }

    /// Largest `c` with `X_i^c | f` for each variable; all zeros for `f = 0`.
    pub fn min_exponents(&self) -> Vec<u32> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        let mut m = first.0.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(&e.0) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e.0[i] > 0)
    }

    /// True when every variable outside `0..j` has exponent zero.
    pub fn lies_in_first(&self, j: usize) -> bool {
        self.terms.keys().all(|e| e.0[j..].iter().all(|&x| x == 0))
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::MismatchedVariables {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.nvars));
        }
        if other.is_constant() {
            return Ok(self.scale(&other.constant_term()));
        }
        if self.is_constant() {
            return Ok(other.scale(&self.constant_term()));
        }
        let mut acc: HashMap<Exponents, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let c = ca * cb;
                match acc.entry(ea.plus(eb)) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += c;
                    }
                }
            }
        }
        Ok(Polynomial {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the monomial `X^exps`.
    pub fn shift(&self, exps: &[u32]) -> Polynomial {
        let s = Exponents(exps.to_vec());
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.plus(&s), c.clone())).collect(),
        }
    }

    /// Divides by the monomial `X^exps`; `None` unless every term is divisible.
    pub fn unshift(&self, exps: &[u32]) -> Option<Polynomial> {
        let s = Exponents(exps.to_vec());
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| e.checked_sub(&s).map(|d| (d, c.clone())))
            .collect::<Option<BTreeMap<_, _>>>()?;
        Some(Polynomial {
            nvars: self.nvars,
            terms,
        })
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    ///
    /// With a single divisor the leading-term reduction is a complete test: if
    /// the leading monomial of the running remainder is not divisible by the
    /// divisor's leading monomial, the divisor cannot divide it.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.nvars, divisor.nvars);
        if divisor.is_zero() {
            return None;
        }
        if divisor.is_constant() {
            return Some(self.scale(&divisor.constant_term().recip()));
        }
        if divisor.is_monomial() {
            let (e, c) = divisor.leading_term().unwrap();
            return self.unshift(&e.0).map(|q| q.scale(&c.recip()));
        }
        let (lead_e, lead_c) = divisor.leading_term().unwrap();
        let lead_inv = lead_c.recip();
        let mut rem = self.clone();
        let mut quotient = Polynomial::zero(self.nvars);
        while let Some((re, rc)) = rem.leading_term() {
            let shift = re.checked_sub(lead_e)?;
            let c = rc * &lead_inv;
            for (e, d) in &divisor.terms {
                rem.add_term(e.plus(&shift), -(d * &c));
            }
            quotient.add_term(shift, c);
        }
        Some(quotient)
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        other.div_exact(self).is_some()
    }

    /// Splits `self = c * p` where `p` has integer coefficients with gcd 1 and
    /// a positive leading coefficient. Zero maps to `(0, 0)`.
    pub fn primitive_split(&self) -> (Rational, Polynomial) {
        if self.is_zero() {
            return (Rational::zero(), self.clone());
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let mut content = Rational::new(num_gcd, den_lcm);
        if self.leading_coeff().is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// Integer-primitive associate with positive leading coefficient.
    pub fn normalized(&self) -> Polynomial {
        self.primitive_split().1
    }

    /// Replaces each variable `X_i` by `images[i]`; images share a ring of
    /// their own.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::MismatchedVariables {
                left: target,
                right: bad.nvars,
            });
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= k as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                t = &t * &cache[k as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Same polynomial viewed in a ring with `nvars` variables (extra
    /// variables appended, or trailing unused variables dropped).
    pub fn with_nvars(&self, nvars: usize) -> Result<Polynomial> {
        if nvars < self.nvars && !self.lies_in_first(nvars) {
            return Err(Error::MismatchedVariables {
                left: self.nvars,
                right: nvars,
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut v = e.0.clone();
                v.resize(nvars, 0);
                (Exponents(v), c.clone())
            })
            .collect();
        Ok(Polynomial { nvars, terms })
    }

    /// Coefficients of `self` viewed as a polynomial in `X_i`; entry `k` is the
    /// coefficient of `X_i^k` (a polynomial not involving `X_i`).
    pub fn coefficients_in(&self, i: usize) -> Vec<Polynomial> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![Polynomial::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let k = e.0[i] as usize;
            let mut rest = e.clone();
            rest.0[i] = 0;
            out[k].terms.insert(rest, c.clone());
        }
        out
    }

    /// Inverse of [`Polynomial::coefficients_in`].
    pub fn from_coefficients_in(nvars: usize, i: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, a) in &c.terms {
                let mut ee = e.clone();
                ee.0[i] += k as u32;
                out.add_term(ee, a.clone());
            }
        }
        out
    }

    /// Leading coefficient with respect to `X_i` (a polynomial free of `X_i`).
    pub fn leading_coeff_in(&self, i: usize) -> Polynomial {
        let d = self.degree_in(i);
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.0[i] == d {
                let mut rest = e.clone();
                rest.0[i] = 0;
                out.terms.insert(rest, c.clone());
            }
        }
        out
    }

    /// Reflection `X^deg * f(1/X_1, ..., 1/X_n)` for the given degree vector.
    /// Every exponent of `f` must be bounded by `deg`.
    pub fn reflect(&self, deg: &[u32]) -> Polynomial {
        let d = Exponents(deg.to_vec());
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    (
                        d.checked_sub(e).expect("reflection degree too small"),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Evaluates at a point with all coordinates given.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluates modulo the prime `p`; `None` if some coefficient denominator
    /// vanishes mod `p`.
    pub fn evaluate_mod(&self, point: &[u64], p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let mut acc: u128 = 0;
        for (e, c) in &self.terms {
            let num = c.numer().mod_floor(&pb);
            let den = c.denom().mod_floor(&pb);
            let num: u64 = num.try_into().ok()?;
            let den: u64 = den.try_into().ok()?;
            if den == 0 {
                return None;
            }
            let mut t = num as u128 * modinv(den, p)? as u128 % p as u128;
            for (x, &k) in point.iter().zip(&e.0) {
                t = t * modpow(*x, k as u64, p) as u128 % p as u128;
            }
            acc = (acc + t) % p as u128;
        }
        Some(acc as u64)
    }
}

pub(crate) fn modpow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r: u128 = 1;
    let mut base = b as u128 % p as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    b = r as u64;
    b
}

pub(crate) fn modinv(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(modpow(a, p - 2, p))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial operands in different rings")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Which arithmetic operation [`poly_op`] performs.
#[derive(Clone, Debug)]
pub enum PolyOp<'a> {
    Add(&'a Polynomial),
    Sub(&'a Polynomial),
    Mul(&'a Polynomial),
    Pow(u32),
}

pub fn poly_op(f: &Polynomial, op: PolyOp<'_>) -> Result<Polynomial> {
    match op {
        PolyOp::Add(g) => f.try_add(g),
        PolyOp::Sub(g) => f.try_sub(g),
        PolyOp::Mul(g) => f.try_mul(g),
        PolyOp::Pow(k) => Ok(f.pow(k)),
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial(nvars: usize, e: &Exponents) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.0.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(var_name(nvars, i)),
            _ => parts.push(format!("{}^{}", var_name(nvars, i), k)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            if e.total() == 0 {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", fmt_monomial(self.nvars, e))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), fmt_monomial(self.nvars, e))?;
            }
        }
        Ok(())
    }
}
