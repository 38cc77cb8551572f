use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::RecipSum;
use crate::kernel::packed::{degree_bound, Packing, PackedPoly};
use crate::kernel::{Polynomial, Rational, RationalFunction};

/// Canonical value of `Σ 1/f_i`.
///
/// The distinct factors of all denominators form a base; the numerator over
/// the common denominator `∏ A^E` is evaluated by nested Horner steps in the
/// base, cancelling base factors that divide it at every level, before the
/// final reduction.
pub fn recip_normalize(alpha: &RecipSum) -> RationalFunction {
    let n = alpha.nvars();
    let mut index: HashMap<&Polynomial, usize> = HashMap::new();
    let mut atoms: Vec<&Polynomial> = Vec::new();
    let mut raw = Vec::with_capacity(alpha.len());
    for t in alpha.terms() {
        let mut ids = Vec::with_capacity(t.factors().len());
        for f in t.factors() {
            let id = *index.entry(f).or_insert_with(|| {
                atoms.push(f);
                atoms.len() - 1
            });
            ids.push(id);
        }
        raw.push((ids, t.scale().recip()));
    }
    let k = atoms.len();
    // large atoms outermost
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| {
        std::cmp::Reverse((atoms[i].total_degree(), atoms[i].num_terms()))
    });
    let mut rank = vec![0; k];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let atoms: Vec<&Polynomial> = order.iter().map(|&i| atoms[i]).collect();
    let mut merged: HashMap<Vec<u32>, Rational> = HashMap::new();
    for (ids, c) in raw {
        let mut e = vec![0u32; k];
        for id in ids {
            e[rank[id]] += 1;
        }
        *merged.entry(e).or_insert_with(Rational::zero) += c;
    }
    merged.retain(|_, c| !c.is_zero());
    if merged.is_empty() {
        return RationalFunction::zero(n);
    }

    let mut top = vec![0u32; k];
    for e in merged.keys() {
        for (m, x) in top.iter_mut().zip(e) {
            *m = (*m).max(*x);
        }
    }
    let bound: u32 = atoms
        .iter()
        .zip(&top)
        .map(|(a, e)| degree_bound(a) * e)
        .sum();
    let mut terms: Vec<(Vec<u32>, Rational)> = merged.into_iter().collect();
    match Packing::new(n, bound) {
        Some(pk) => {
            let mut ctx = Context::new(&atoms, pk, n);
            let (s, num, den_exp) = horner(&mut terms, 0, &mut ctx);
            let mut den = PackedPoly::constant(BigInt::one());
            for (i, &e) in den_exp.iter().enumerate() {
                if e > 0 {
                    den = den.mul(ctx.power(i, e));
                }
            }
            let num = num.to_poly(&pk).scale(&s);
            RationalFunction::new(num, den.to_poly(&pk)).expect("denominators are nonzero")
        }
        _ => fallback(&terms, &atoms, n),
    }
}

fn fallback(terms: &[(Vec<u32>, Rational)], atoms: &[&Polynomial], n: usize) -> RationalFunction {
    let mut acc = RationalFunction::zero(n);
    for (e, c) in terms {
        let mut den = Polynomial::one(n);
        for (a, &x) in atoms.iter().zip(e) {
            if x > 0 {
                den = &den * &a.pow(x);
            }
        }
        let t = RationalFunction::new(Polynomial::constant(n, c.clone()), den)
            .expect("denominators are nonzero");
        acc = &acc + &t;
    }
    acc
}

struct Context {
    pk: Packing,
    atoms: Vec<PackedPoly>,
    // variable used for the modular divisibility screen, per atom
    screen_var: Vec<usize>,
    points: Vec<Vec<u64>>,
    cache: HashMap<(usize, u32), PackedPoly>,
}

impl Context {
    fn new(atoms: &[&Polynomial], pk: Packing, n: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_a70e);
        let points = (0..2)
            .map(|_| (0..n).map(|_| rng.gen_range(2..(1u64 << 61) - 1)).collect())
            .collect();
        Context {
            pk,
            atoms: atoms.iter().map(|a| PackedPoly::from_poly(a, &pk)).collect(),
            screen_var: atoms
                .iter()
                .map(|a| (0..n).max_by_key(|&i| a.degree_in(i)).unwrap_or(0))
                .collect(),
            points,
            cache: HashMap::new(),
        }
    }

    fn power(&mut self, i: usize, e: u32) -> &PackedPoly {
        let atoms = &self.atoms;
        self.cache.entry((i, e)).or_insert_with(|| atoms[i].pow(e))
    }

    /// Divides out atom `j` while it divides `num`, at most `limit` times.
    fn strip(&self, num: &mut PackedPoly, j: usize, limit: &mut u32) {
        let atom = &self.atoms[j];
        while *limit > 0 {
            let plausible = self
                .points
                .iter()
                .all(|pt| num.may_be_divisible_by(atom, &self.pk, self.screen_var[j], pt));
            if !plausible {
                return;
            }
            match num.div_exact(atom, &self.pk) {
                Some(q) => {
                    *num = q;
                    *limit -= 1;
                }
                None => return,
            }
        }
    }
}

/// Sums `Σ c · ∏ (1/A_j)^e_j` over the given terms, grouping by the exponent
/// of atom `level` and recursing on the later atoms. Returns `s · num` with
/// `num` an integer-primitive polynomial, and the atom exponents of its
/// denominator, with every atom that divides the numerator cancelled.
fn horner(
    terms: &mut [(Vec<u32>, Rational)],
    level: usize,
    ctx: &mut Context,
) -> (Rational, PackedPoly, Vec<u32>) {
    let k = ctx.atoms.len();
    if level == k {
        let c: Rational = terms.iter().map(|(_, c)| c.clone()).sum();
        return (c, PackedPoly::constant(BigInt::one()), vec![0; k]);
    }
    terms.sort_by(|a, b| a.0[level].cmp(&b.0[level]));
    let mut parts = Vec::new();
    let mut start = 0;
    while start < terms.len() {
        let d = terms[start].0[level];
        let mut end = start;
        while end < terms.len() && terms[end].0[level] == d {
            end += 1;
        }
        let (s, num, mut exps) = horner(&mut terms[start..end], level + 1, ctx);
        exps[level] = d;
        if !s.is_zero() && !num.is_zero() {
            parts.push((s, num, exps));
        }
        start = end;
    }
    if parts.is_empty() {
        return (Rational::zero(), PackedPoly::zero(), vec![0; k]);
    }
    let mut top = vec![0u32; k];
    for (_, _, e) in &parts {
        for (m, x) in top.iter_mut().zip(e) {
            *m = (*m).max(*x);
        }
    }
    // common scalar: gcd of numerators over lcm of denominators
    let (g, l) = parts.iter().fold((BigInt::zero(), BigInt::one()), |(g, l), (s, _, _)| {
        (g.gcd(s.numer()), l.lcm(s.denom()))
    });
    let common = Rational::new(g, l);
    let mut num = PackedPoly::zero();
    for (s, p, e) in parts {
        let factor = (s / &common).to_integer();
        let mut t = p;
        for j in level..k {
            if top[j] > e[j] {
                t = t.mul(ctx.power(j, top[j] - e[j]));
            }
        }
        num = num.add(&t.mul(&PackedPoly::constant(factor)));
    }
    if num.is_zero() {
        return (Rational::zero(), num, vec![0; k]);
    }
    let content = num.content();
    let num0 = num.div_scalar(&content);
    let mut num = num0;
    let s = common * Rational::from_integer(content);
    for j in level..k {
        let mut limit = top[j];
        ctx.strip(&mut num, j, &mut limit);
        top[j] = limit;
    }
    (s, num, top)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn common_denominators() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let s = RecipSum::new(2, [x.clone(), y.clone()]).unwrap();
        assert_eq!(recip_normalize(&s).to_string(), "(X+Y)/(X*Y)");
        let z = RecipSum::new(2, [x.clone(), -&x]).unwrap();
        assert!(recip_normalize(&z).is_zero());
        let t = RecipSum::new(2, [&x + &y, x.clone()]).unwrap();
        assert_eq!(recip_normalize(&t).to_string(), "(2*X+Y)/(X^2+X*Y)");
    }

    #[test]
    fn agrees_with_pairwise_sum() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let one = Polynomial::one(2);
        let denoms = vec![
            &x + &one,
            &(&x + &one) * &y,
            (&x + &one).pow(2),
            &x * &y,
            Polynomial::from_int(2, 3),
            -&(&y - &one),
        ];
        let s = RecipSum::new(2, denoms.clone()).unwrap();
        let mut expected = RationalFunction::zero(2);
        for d in &denoms {
            expected = &expected + &RationalFunction::reciprocal_of(d).unwrap();
        }
        assert_eq!(recip_normalize(&s), expected);
        let sq = s.mul(&s).unwrap();
        assert_eq!(recip_normalize(&sq), &expected * &expected);
    }

    #[test]
    fn fallback_matches_packed_path() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let s = RecipSum::new(2, [&x + &y, &x * &y, x.pow(2)]).unwrap();
        let atoms_owned = [&x + &y, x.clone(), y.clone()];
        let atoms: Vec<&Polynomial> = atoms_owned.iter().collect();
        let terms = vec![
            (vec![1, 0, 0], Rational::one()),
            (vec![0, 1, 1], Rational::one()),
            (vec![0, 2, 0], Rational::one()),
        ];
        assert_eq!(fallback(&terms, &atoms, 2), recip_normalize(&s));
    }
}
