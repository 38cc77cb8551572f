//! Integer polynomials with monomials packed into a `u64`, for hot loops.
//!
//! A monomial is stored as `[total | e_1 | ... | e_n]` in fixed-width fields,
//! so integer comparison is graded-lex comparison and multiplying monomials is
//! integer addition. Callers keep degrees below the field width.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::{Exponents, Polynomial, Rational};

const P: u64 = (1 << 61) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Packing {
    nvars: usize,
    bits: u32,
}

impl Packing {
    /// A packing for `nvars` variables whose total degrees stay at or below
    /// `max_degree`, if one fits in 64 bits.
    pub(crate) fn new(nvars: usize, max_degree: u32) -> Option<Packing> {
        let bits = 64 / (nvars as u32 + 1);
        if nvars == 0 || bits == 0 {
            return None;
        }
        let bits = bits.min(31);
        if (max_degree as u64) < (1u64 << bits) {
            Some(Packing { nvars, bits })
        } else {
            None
        }
    }

    fn pack(&self, e: &[u32]) -> u64 {
        let total: u32 = e.iter().sum();
        let mut key = total as u64;
        for &x in e {
            key = (key << self.bits) | x as u64;
        }
        key
    }

    fn unpack(&self, key: u64) -> Vec<u32> {
        let mask = (1u64 << self.bits) - 1;
        let mut out = vec![0u32; self.nvars];
        let mut k = key;
        for i in (0..self.nvars).rev() {
            out[i] = (k & mask) as u32;
            k >>= self.bits;
        }
        out
    }

    fn exponent(&self, key: u64, i: usize) -> u32 {
        let mask = (1u64 << self.bits) - 1;
        ((key >> (self.bits as usize * (self.nvars - 1 - i))) & mask) as u32
    }

    /// True when every exponent of `a` is at most the matching one of `b`.
    fn divides(&self, a: u64, b: u64) -> bool {
        (0..self.nvars).all(|i| self.exponent(a, i) <= self.exponent(b, i))
    }
}

/// Integer polynomial; terms sorted by descending packed monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct PackedPoly {
    pub(crate) terms: Vec<(u64, BigInt)>,
}

impl PackedPoly {
    pub(crate) fn zero() -> Self {
        PackedPoly { terms: Vec::new() }
    }

    pub(crate) fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            PackedPoly {
                terms: vec![(0, c)],
            }
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn len(&self) -> usize {
        self.terms.len()
    }

    /// Converts a polynomial with integer coefficients.
    pub(crate) fn from_poly(f: &Polynomial, pk: &Packing) -> Self {
        let mut terms: Vec<(u64, BigInt)> = f
            .terms()
            .map(|(e, c)| {
                debug_assert!(c.is_integer());
                (pk.pack(&e.0), c.numer().clone())
            })
            .collect();
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        PackedPoly { terms }
    }

    pub(crate) fn to_poly(&self, pk: &Packing) -> Polynomial {
        Polynomial::from_terms(
            pk.nvars,
            self.terms
                .iter()
                .map(|(k, c)| (pk.unpack(*k), Rational::from_integer(c.clone()))),
        )
    }

    pub(crate) fn add(&self, other: &PackedPoly) -> PackedPoly {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.len() && j < other.len() {
            let (ka, ca) = &self.terms[i];
            let (kb, cb) = &other.terms[j];
            if ka > kb {
                out.push((*ka, ca.clone()));
                i += 1;
            } else if kb > ka {
                out.push((*kb, cb.clone()));
                j += 1;
            } else {
                let s = ca + cb;
                if !s.is_zero() {
                    out.push((*ka, s));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        PackedPoly { terms: out }
    }

    pub(crate) fn mul(&self, other: &PackedPoly) -> PackedPoly {
        if self.is_zero() || other.is_zero() {
            return PackedPoly::zero();
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (k, c) = &small.terms[0];
            return PackedPoly {
                terms: big.terms.iter().map(|(kb, cb)| (kb + k, cb * c)).collect(),
            };
        }
        let mut acc: HashMap<u64, BigInt> = HashMap::with_capacity(big.len() * 2);
        for (ka, ca) in &small.terms {
            for (kb, cb) in &big.terms {
                let prod = ca * cb;
                match acc.entry(ka + kb) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += prod;
                    }
                }
            }
        }
        let mut terms: Vec<(u64, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        PackedPoly { terms }
    }

    pub(crate) fn pow(&self, e: u32) -> PackedPoly {
        let mut out = PackedPoly::constant(BigInt::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Content-free copy: divides by the gcd of the coefficients, returning it.
    pub(crate) fn content(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    pub(crate) fn div_scalar(&self, c: &BigInt) -> PackedPoly {
        PackedPoly {
            terms: self.terms.iter().map(|(k, a)| (*k, a / c)).collect(),
        }
    }

    /// Exact quotient by a primitive divisor, or `None`.
    pub(crate) fn div_exact(&self, d: &PackedPoly, pk: &Packing) -> Option<PackedPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(PackedPoly::zero());
        }
        let (lk, lc) = &d.terms[0];
        let mut rem: BTreeMap<u64, BigInt> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((&rk, _)) = rem.iter().next_back() {
            if rk < *lk || !pk.divides(*lk, rk) {
                return None;
            }
            let rc = rem.remove(&rk).expect("present");
            let (q, r) = rc.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            let shift = rk - lk;
            for (k, c) in &d.terms[1..] {
                let key = k + shift;
                let v = &q * c;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-v);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= v;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quotient.push((shift, q));
        }
        Some(PackedPoly { terms: quotient })
    }

    /// Cheap necessary condition for `d | self`: after fixing every variable
    /// but `var` at `point` modulo a prime, the univariate images must divide.
    /// Returns `false` only when divisibility is impossible.
    pub(crate) fn may_be_divisible_by(
        &self,
        d: &PackedPoly,
        pk: &Packing,
        var: usize,
        point: &[u64],
    ) -> bool {
        let a = self.univariate_image(pk, var, point);
        let b = d.univariate_image(pk, var, point);
        let full_degree = d
            .terms
            .iter()
            .map(|(k, _)| pk.exponent(*k, var))
            .max()
            .unwrap_or(0) as usize;
        if b.len() != full_degree + 1 {
            // degree dropped under specialization; no verdict
            return true;
        }
        univariate_rem_is_zero(a, &b)
    }

    fn univariate_image(&self, pk: &Packing, var: usize, point: &[u64]) -> Vec<u64> {
        let mut out: Vec<u64> = Vec::new();
        for (k, c) in &self.terms {
            let e = pk.exponent(*k, var) as usize;
            if out.len() <= e {
                out.resize(e + 1, 0);
            }
            let mut v = reduce(c);
            for (i, &x) in point.iter().enumerate() {
                if i != var {
                    v = mulm(v, powm(x, pk.exponent(*k, i) as u64));
                }
            }
            out[e] = addm(out[e], v);
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }
}

fn univariate_rem_is_zero(mut a: Vec<u64>, b: &[u64]) -> bool {
    let db = b.len() - 1;
    let inv_lead = powm(b[db], P - 2);
    while a.len() > db {
        let top = a.len() - 1;
        let c = mulm(a[top], inv_lead);
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let idx = top - db + i;
                a[idx] = subm(a[idx], mulm(c, bi));
            }
        }
        a.pop();
    }
    a.iter().all(|&x| x == 0)
}

fn reduce(c: &BigInt) -> u64 {
    let p = BigInt::from(P);
    let r = c.mod_floor(&p);
    u64::try_from(r).expect("reduced below the modulus")
}

pub(crate) fn mulm(a: u64, b: u64) -> u64 {
    let x = a as u128 * b as u128;
    let lo = (x as u64) & P;
    let hi = (x >> 61) as u64;
    let s = lo + hi;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn addm(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn subm(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn powm(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b);
        }
        b = mulm(b, b);
        e >>= 1;
    }
    r
}

/// The maximum total degree over the terms of `f`.
pub(crate) fn degree_bound(f: &Polynomial) -> u32 {
    f.terms().map(|(e, _)| Exponents::total(e)).max().unwrap_or(0)
}
