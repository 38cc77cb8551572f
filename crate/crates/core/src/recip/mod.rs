//! Reciprocal sums `Σ 1/f_i` and the operations on them.

mod invert;
mod length;
mod normalize;
mod star;

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::{Polynomial, Rational, RationalFunction};

pub use invert::{invert_unit, invert_unit_with, InversionStrategy, DEFAULT_TERM_BUDGET};
pub use length::{brute_force_length, candidate_denominators, LengthSearch};
pub use normalize::recip_normalize;
pub use star::{sigma, sigma_poly, sigma_recip, star_transform, StarForm};

/// One reciprocal `1/(scale * f_1 * ... * f_k)`.
///
/// The factors are integer-primitive with positive leading coefficient and
/// are kept apart so that products of reciprocals stay cheap to build and to
/// normalize. A term with no factors is the constant `1/scale`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RecipTerm {
    scale: Rational,
    factors: Vec<Polynomial>,
}

impl RecipTerm {
    fn from_denominator(f: &Polynomial) -> Self {
        let (c, p) = f.primitive_split();
        if p.is_one() {
            RecipTerm {
                scale: c,
                factors: Vec::new(),
            }
        } else {
            RecipTerm {
                scale: c,
                factors: vec![p],
            }
        }
    }

    fn constant(c: Rational) -> Self {
        RecipTerm {
            scale: c,
            factors: Vec::new(),
        }
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn factors(&self) -> &[Polynomial] {
        &self.factors
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    /// The expanded denominator.
    pub fn denominator(&self, nvars: usize) -> Polynomial {
        let mut d = Polynomial::constant(nvars, self.scale.clone());
        for f in &self.factors {
            d = &d * f;
        }
        d
    }

    fn times(&self, other: &RecipTerm) -> RecipTerm {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        factors.sort();
        RecipTerm {
            scale: &self.scale * &other.scale,
            factors,
        }
    }

    fn negated(&self) -> RecipTerm {
        RecipTerm {
            scale: -self.scale.clone(),
            factors: self.factors.clone(),
        }
    }

    fn scaled(&self, c: &Rational) -> RecipTerm {
        RecipTerm {
            scale: &self.scale * c,
            factors: self.factors.clone(),
        }
    }
}

/// A finite multiset of nonzero denominators standing for `Σ 1/f_i`.
///
/// The representation is kept as given: nothing is combined or cancelled
/// unless asked for, so the number of terms bounds the length of the value.
#[derive(Clone, Debug)]
pub struct RecipSum {
    nvars: usize,
    terms: Vec<RecipTerm>,
}

impl RecipSum {
    /// Builds `Σ 1/f` over the given denominators.
    pub fn new(nvars: usize, denoms: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut terms = Vec::new();
        for f in denoms {
            if f.nvars() != nvars {
                return Err(Error::MismatchedVariables {
                    left: nvars,
                    right: f.nvars(),
                });
            }
            if f.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            terms.push(RecipTerm::from_denominator(&f));
        }
        Ok(RecipSum { nvars, terms })
    }

    pub fn empty(nvars: usize) -> Self {
        RecipSum {
            nvars,
            terms: Vec::new(),
        }
    }

    /// The single reciprocal `1/f`.
    pub fn single(f: Polynomial) -> Result<Self> {
        let n = f.nvars();
        Self::new(n, [f])
    }

    /// The constant `c` written as `1/(1/c)`.
    pub fn constant(nvars: usize, c: Rational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RecipSum {
            nvars,
            terms: vec![RecipTerm::constant(c.recip())],
        })
    }

    pub(crate) fn from_terms(nvars: usize, terms: Vec<RecipTerm>) -> Self {
        RecipSum { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of reciprocal terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[RecipTerm] {
        &self.terms
    }

    /// Expanded denominators, in storage order.
    pub fn denominators(&self) -> Vec<Polynomial> {
        self.terms.iter().map(|t| t.denominator(self.nvars)).collect()
    }

    /// Value as a canonical rational function.
    pub fn normalize(&self) -> RationalFunction {
        recip_normalize(self)
    }

    /// True iff both sums have the same multiset of denominators.
    pub fn same_denominators(&self, other: &RecipSum) -> bool {
        if self.nvars != other.nvars || self.len() != other.len() {
            return false;
        }
        let mut a = self.denominators();
        let mut b = other.denominators();
        a.sort();
        b.sort();
        a == b
    }

    fn check_same(&self, other: &RecipSum) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::MismatchedVariables {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &RecipSum) -> Result<RecipSum> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(RecipSum::from_terms(self.nvars, terms))
    }

    pub fn mul(&self, other: &RecipSum) -> Result<RecipSum> {
        self.check_same(other)?;
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(a.times(b));
            }
        }
        Ok(RecipSum::from_terms(self.nvars, terms))
    }

    pub fn neg(&self) -> RecipSum {
        RecipSum::from_terms(self.nvars, self.terms.iter().map(RecipTerm::negated).collect())
    }

    /// Multiplies the value by the nonzero constant `c`.
    pub fn scale(&self, c: &Rational) -> Result<RecipSum> {
        if c.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let inv = c.recip();
        Ok(RecipSum::from_terms(
            self.nvars,
            self.terms.iter().map(|t| t.scaled(&inv)).collect(),
        ))
    }

    pub fn pow(&self, k: u32) -> RecipSum {
        let mut out = RecipSum::from_terms(self.nvars, vec![RecipTerm::constant(Rational::one())]);
        for _ in 0..k {
            out = out.mul(self).expect("same ring");
        }
        out
    }
}

impl PartialEq for RecipSum {
    fn eq(&self, other: &Self) -> bool {
        self.same_denominators(other)
    }
}

impl fmt::Display for RecipSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "recip({})", t.denominator(self.nvars))?;
        }
        Ok(())
    }
}

/// Which combination [`recip_combine`] performs.
#[derive(Clone, Copy, Debug)]
pub enum RecipOp<'a> {
    Add(&'a RecipSum),
    Mul(&'a RecipSum),
    Neg,
}

/// Union for sums, pairwise denominator products for products, negated
/// denominators for negation.
pub fn recip_combine(alpha: &RecipSum, op: RecipOp<'_>) -> Result<RecipSum> {
    match op {
        RecipOp::Add(b) => alpha.add(b),
        RecipOp::Mul(b) => alpha.mul(b),
        RecipOp::Neg => Ok(alpha.neg()),
    }
}

/// Unit test in R: the value is a unit iff the constant denominators
/// contribute a nonzero residue. Returns the flag and that residue.
pub fn is_unit(alpha: &RecipSum) -> (bool, Rational) {
    let residue: Rational = alpha
        .terms
        .iter()
        .filter(|t| t.is_constant())
        .map(|t| t.scale.recip())
        .sum();
    (!residue.is_zero(), residue)
}

/// For `α = Σ 1/f_i` returns `F·α` with `F = ∏ f_i`, a polynomial, and checks
/// that `1/F = (1/(F·α))·α`.
pub fn cofactor_product(alpha: &RecipSum) -> Result<Polynomial> {
    let value = recip_normalize(alpha);
    if value.is_zero() {
        return Err(Error::ZeroValue);
    }
    let n = alpha.nvars;
    let denoms = alpha.denominators();
    let mut out = Polynomial::zero(n);
    for i in 0..denoms.len() {
        let mut p = Polynomial::one(n);
        for (k, d) in denoms.iter().enumerate() {
            if k != i {
                p = &p * d;
            }
        }
        out = &out + &p;
    }
    let big_f = denoms.iter().fold(Polynomial::one(n), |acc, d| &acc * d);
    let lhs = RationalFunction::reciprocal_of(&big_f)?;
    let rhs = RationalFunction::reciprocal_of(&out)?.try_mul(&value)?;
    if lhs != rhs {
        return Err(Error::InternalContradiction(
            "cofactor identity does not hold".into(),
        ));
    }
    Ok(out)
}

/// Drops the term at the 1-based `index`.
pub fn reduce_length_step(alpha: &RecipSum, index: usize) -> Result<RecipSum> {
    if index == 0 || index > alpha.len() {
        return Err(Error::IndexOutOfRange {
            index,
            len: alpha.len(),
        });
    }
    let mut terms = alpha.terms.clone();
    terms.remove(index - 1);
    Ok(RecipSum::from_terms(alpha.nvars, terms))
}

/// Keeps the denominators in `K[X_1..X_j]` for a sum whose value lies in
/// `K(X_1..X_j)`; the discarded terms must cancel.
pub fn restrict_to_subring(alpha: &RecipSum, j: usize) -> Result<RecipSum> {
    let value = recip_normalize(alpha);
    if !(value.num().lies_in_first(j) && value.den().lies_in_first(j)) {
        return Err(Error::PreconditionViolated(format!(
            "value {value} involves variables beyond the first {j}"
        )));
    }
    let (kept, dropped): (Vec<RecipTerm>, Vec<RecipTerm>) = alpha
        .terms
        .iter()
        .cloned()
        .partition(|t| t.factors.iter().all(|f| f.lies_in_first(j)));
    let rest = recip_normalize(&RecipSum::from_terms(alpha.nvars, dropped));
    if !rest.is_zero() {
        return Err(Error::InternalContradiction(format!(
            "discarded terms sum to {rest}, not 0"
        )));
    }
    Ok(RecipSum::from_terms(alpha.nvars, kept))
}
