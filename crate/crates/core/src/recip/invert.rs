//! Inverting units `u + Σ 1/x_i` of R as explicit reciprocal sums.
//!
//! After scaling, the unit is `u·(1 + Σ α_i)` with `α_i = 1/y_i`, `y_i = u·x_i`.
//! For a set `T` of indices put `P_T = ∏_{i∈T} y_i`, `N_T = P_T + Σ_{i∈T} P_{T∖i}`
//! and `V_T = 1/(1 + Σ_{i∈T} α_i) = P_T/N_T`. With `K_∅ = 1`,
//! `K_T = V_T · Σ_{i∈T} K_{T∖i}` one has
//!
//! ```text
//! V_S = (-1)^|S| · (1/N_S) · Σ_{i∈S} K_{S∖i}  -  Σ_{T⊊S} (-1)^|S∖T| · V_T
//! ```
//!
//! so every `V_T` is a polynomial with rational coefficients in the
//! reciprocals `1/N_T`, i.e. a reciprocal sum. The inverse is `V_S / u`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{is_unit, RecipSum, RecipTerm};
use crate::error::{Error, Result};
use crate::kernel::{Polynomial, Rational};

/// Default cap on the number of reciprocal terms an inversion may produce.
pub const DEFAULT_TERM_BUDGET: usize = 100_000;

/// How [`invert_unit_with`] builds the inverse.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum InversionStrategy {
    /// Inclusion-exclusion over subsets of the nonconstant terms (see the
    /// module docs). Sizes 2, 6, 41, 1630 for 1..4 nonconstant terms.
    #[default]
    SubsetChain,
    /// The descending recursion
    /// `∏_{i≤k} α_i - H_{k+1} = (1 + Σ_{i≠k+1} α_i)·H_k`, starting from
    /// `H_n = 1/(∏ y_i + Σ_i ∏_{j≠i} y_j)`, inverting each smaller unit
    /// recursively. Its size grows like `T(n) ≈ T(n-1)^n`; usable up to three
    /// nonconstant terms.
    ReverseInduction,
}

/// Inverse of a unit with the default strategy and budget.
pub fn invert_unit(alpha: &RecipSum) -> Result<RecipSum> {
    invert_unit_with(alpha, InversionStrategy::default(), DEFAULT_TERM_BUDGET)
}

pub fn invert_unit_with(
    alpha: &RecipSum,
    strategy: InversionStrategy,
    budget: usize,
) -> Result<RecipSum> {
    let (flag, u) = is_unit(alpha);
    if !flag {
        return Err(Error::NotAUnit);
    }
    let n = alpha.nvars();
    let ys: Vec<Polynomial> = alpha
        .terms()
        .iter()
        .filter(|t| !t.is_constant())
        .map(|t| t.denominator(n).scale(&u))
        .collect();
    let v = match strategy {
        InversionStrategy::SubsetChain => subset_chain(n, &ys, budget)?,
        InversionStrategy::ReverseInduction => {
            let terms = ys.iter().map(RecipTerm::from_denominator).collect::<Vec<_>>();
            reverse_induction(n, &terms, budget)?
        }
    };
    // 1/α = V_S / u
    v.scale(&u.recip())
}

/// Sparse monomial in the reciprocals `1/N_T`: sorted `(subset mask, exponent)`.
type AtomMonomial = Vec<(u32, u32)>;
type AtomPoly = HashMap<AtomMonomial, Rational>;

fn atom_one() -> AtomPoly {
    HashMap::from([(Vec::new(), Rational::one())])
}

fn atom_add_into(acc: &mut AtomPoly, p: &AtomPoly, sign: &Rational) {
    for (m, c) in p {
        let e = acc.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c * sign;
    }
    acc.retain(|_, c| !c.is_zero());
}

fn atom_mul(a: &AtomPoly, b: &AtomPoly, budget: usize) -> Result<AtomPoly> {
    let mut out: AtomPoly = HashMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let e = out.entry(merge(ma, mb)).or_insert_with(Rational::zero);
            *e += ca * cb;
        }
        if out.len() > budget {
            return Err(Error::TermBudgetExceeded { budget });
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn merge(a: &AtomMonomial, b: &AtomMonomial) -> AtomMonomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn sign(k: u32) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn subset_chain(nvars: usize, ys: &[Polynomial], budget: usize) -> Result<RecipSum> {
    let m = ys.len();
    if m >= 31 {
        return Err(Error::TermBudgetExceeded { budget });
    }
    let full: u32 = (1u32 << m) - 1;
    let mut masks: Vec<u32> = (1..=full).collect();
    masks.sort_by_key(|t| t.count_ones());

    let mut v: HashMap<u32, AtomPoly> = HashMap::from([(0, atom_one())]);
    let mut k: HashMap<u32, AtomPoly> = HashMap::from([(0, atom_one())]);
    for &t in &masks {
        let size = t.count_ones();
        let mut sum_k: AtomPoly = HashMap::new();
        for i in 0..m {
            if t & (1 << i) != 0 {
                atom_add_into(&mut sum_k, &k[&(t & !(1 << i))], &Rational::one());
            }
        }
        let z = HashMap::from([(vec![(t, 1u32)], sign(size))]);
        let mut vt = atom_mul(&z, &sum_k, budget)?;
        // proper subsets of t
        let mut sub = t;
        loop {
            sub = sub.wrapping_sub(1) & t;
            let s = -sign(size - sub.count_ones());
            atom_add_into(&mut vt, &v[&sub], &s);
            if sub == 0 {
                break;
            }
        }
        if vt.len() > budget {
            return Err(Error::TermBudgetExceeded { budget });
        }
        if t != full {
            k.insert(t, atom_mul(&vt, &sum_k, budget)?);
        }
        v.insert(t, vt);
    }
    let vs = v.remove(&full).expect("full subset computed");

    // materialize N_T for the masks that occur
    let mut atoms: HashMap<u32, (Rational, Option<Polynomial>)> = HashMap::new();
    for mono in vs.keys() {
        for &(t, _) in mono {
            if atoms.contains_key(&t) {
                continue;
            }
            let nt = subset_denominator(nvars, ys, t);
            if nt.is_zero() {
                return Err(Error::InternalContradiction(format!(
                    "denominator for subset {t:#b} vanished"
                )));
            }
            let (c, p) = nt.primitive_split();
            atoms.insert(t, (c, (!p.is_one()).then_some(p)));
        }
    }
    let mut terms = Vec::with_capacity(vs.len());
    for (mono, c) in vs {
        let mut scale = c.recip();
        let mut factors = Vec::new();
        for (t, e) in mono {
            let (kc, p) = &atoms[&t];
            for _ in 0..e {
                scale *= kc;
                if let Some(p) = p {
                    factors.push(p.clone());
                }
            }
        }
        factors.sort();
        terms.push(RecipTerm { scale, factors });
    }
    terms.sort_by(|a, b| (a.factors.len(), &a.factors).cmp(&(b.factors.len(), &b.factors)));
    Ok(RecipSum::from_terms(nvars, terms))
}

/// `N_T = P_T + Σ_{i∈T} P_{T∖i}`.
fn subset_denominator(nvars: usize, ys: &[Polynomial], t: u32) -> Polynomial {
    let members: Vec<usize> = (0..ys.len()).filter(|i| t & (1 << i) != 0).collect();
    let product = |skip: Option<usize>| {
        members
            .iter()
            .filter(|&&i| Some(i) != skip)
            .fold(Polynomial::one(nvars), |acc, &i| &acc * &ys[i])
    };
    let mut out = product(None);
    for &i in &members {
        out = &out + &product(Some(i));
    }
    out
}

/// Inverse of `1 + Σ 1/y_i` following the descending `H_k` recursion.
fn reverse_induction(nvars: usize, ys: &[RecipTerm], budget: usize) -> Result<RecipSum> {
    let n = ys.len();
    let one = RecipSum::from_terms(nvars, vec![RecipTerm::constant(Rational::one())]);
    if n == 0 {
        return Ok(one);
    }
    let dens: Vec<Polynomial> = ys.iter().map(|t| t.denominator(nvars)).collect();
    let all = (1u32 << n) - 1;
    let h_n = subset_denominator(nvars, &dens, all);
    if h_n.is_zero() {
        return Err(Error::InternalContradiction("H_n denominator vanished".into()));
    }
    let mut h = RecipSum::from_terms(nvars, vec![RecipTerm::from_denominator(&h_n)]);
    for k in (0..n).rev() {
        let rest: Vec<RecipTerm> = ys
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, t)| t.clone())
            .collect();
        let sub = reverse_induction(nvars, &rest, budget)?;
        let prefix = ys[..k]
            .iter()
            .fold(RecipTerm::constant(Rational::one()), |acc, t| acc.times(t));
        let diff = RecipSum::from_terms(nvars, vec![prefix]).add(&h.neg())?;
        if sub.len().saturating_mul(diff.len()) > budget {
            return Err(Error::TermBudgetExceeded { budget });
        }
        h = sub.mul(&diff)?;
    }
    Ok(h)
}
