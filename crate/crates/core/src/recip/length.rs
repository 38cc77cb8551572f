//! Bounded exhaustive search for the length of a rational function.
//!
//! Candidate denominators are integer polynomials of bounded total degree and
//! coefficient height, content-normalized. A representation
//! `r = Σ λ_i / f_i` with free nonzero `λ_i ∈ Q` is looked for with the number
//! of terms increasing. Combinations are screened by evaluating at random points
//! modulo the prime `2^61 - 1`, which can never reject a true representation,
//! and every hit is confirmed by exact linear algebra.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::RecipSum;
use crate::kernel::{Polynomial, Rational, RationalFunction};

const P: u64 = (1 << 61) - 1;

/// Outcome of [`brute_force_length`].
#[derive(Clone, Debug, PartialEq)]
pub enum LengthSearch {
    /// Shortest representation within the bounds, with a witness.
    Found { length: usize, witness: RecipSum },
    NotFound,
}

impl LengthSearch {
    pub fn length(&self) -> Option<usize> {
        match self {
            LengthSearch::Found { length, .. } => Some(*length),
            LengthSearch::NotFound => None,
        }
    }
}

/// All content-normalized integer polynomials with total degree at most
/// `degree` and coefficients bounded by `height` in absolute value, simplest
/// first.
pub fn candidate_denominators(nvars: usize, degree: u32, height: u32) -> Vec<Polynomial> {
    let monomials = monomials_up_to(nvars, degree);
    let h = height as i64;
    let base = (2 * h + 1) as usize;
    let mut out = Vec::new();
    let mut digits = vec![0usize; monomials.len()];
    'outer: loop {
        // odometer over coefficient vectors in [-h, h]^M
        let coeffs: Vec<i64> = digits.iter().map(|&d| d as i64 - h).collect();
        if let Some(f) = normalized_candidate(nvars, &monomials, &coeffs) {
            out.push(f);
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < base {
                continue 'outer;
            }
            *d = 0;
        }
        break;
    }
    out.sort_by_cached_key(|f| {
        let height = f
            .terms()
            .map(|(_, c)| c.numer().abs())
            .max()
            .unwrap_or_default();
        (f.total_degree().unwrap_or(0), f.num_terms(), height, f.clone())
    });
    out
}

fn monomials_up_to(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, degree, &mut vec![0; nvars], &mut out);
    out
}

fn normalized_candidate(nvars: usize, monomials: &[Vec<u32>], coeffs: &[i64]) -> Option<Polynomial> {
    let g = coeffs.iter().fold(0i64, |g, c| g.gcd(c));
    if g != 1 {
        return None;
    }
    let f = Polynomial::from_terms(
        nvars,
        monomials
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| **c != 0)
            .map(|(m, c)| (m.clone(), Rational::from_integer((*c).into()))),
    );
    f.leading_coeff().is_positive().then_some(f)
}

/// Minimum number of reciprocal terms, at most `max_terms`, representing `r`
/// over the candidate set. Exhaustive: the cost grows like
/// `candidates^max_terms`.
pub fn brute_force_length(
    r: &RationalFunction,
    degree: u32,
    height: u32,
    max_terms: usize,
) -> LengthSearch {
    let n = r.nvars();
    if r.is_zero() {
        return LengthSearch::Found {
            length: 0,
            witness: RecipSum::empty(n),
        };
    }
    if max_terms == 0 {
        return LengthSearch::NotFound;
    }
    // one term: the numerator must be a constant and the denominator a candidate
    if r.num().is_constant() && within_bounds(r.den(), degree, height) {
        let c = r.num().constant_term();
        let witness = RecipSum::new(n, [r.den().scale(&c.recip())]).expect("nonzero");
        return LengthSearch::Found { length: 1, witness };
    }
    if max_terms == 1 {
        return LengthSearch::NotFound;
    }
    let candidates = candidate_denominators(n, degree, height);
    let screen = Screen::new(r, &candidates, max_terms + 4);
    for t in 2..=max_terms {
        if let Some(witness) = search_terms(r, &candidates, &screen, t) {
            return LengthSearch::Found { length: t, witness };
        }
    }
    LengthSearch::NotFound
}

fn within_bounds(f: &Polynomial, degree: u32, height: u32) -> bool {
    f.total_degree().unwrap_or(0) <= degree
        && f.terms().all(|(_, c)| c.is_integer() && c.numer().abs() <= height.into())
}

/// Values `1/f(P_j)` of every candidate and `r(P_j)` at shared random points.
struct Screen {
    inv_values: Vec<Vec<u64>>,
    target: Vec<u64>,
}

impl Screen {
    fn new(r: &RationalFunction, candidates: &[Polynomial], k: usize) -> Self {
        let n = r.nvars();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1e57);
        'retry: loop {
            let points: Vec<Vec<u64>> = (0..k)
                .map(|_| (0..n).map(|_| rng.gen_range(2..P)).collect())
                .collect();
            let mut target = Vec::with_capacity(k);
            for pt in &points {
                let num = r.num().evaluate_mod(pt, P);
                let den = r.den().evaluate_mod(pt, P);
                match (num, den) {
                    (Some(a), Some(b)) if b != 0 => target.push(mulm(a, inv(b))),
                    _ => continue 'retry,
                }
            }
            let mut inv_values = Vec::with_capacity(candidates.len());
            for f in candidates {
                let mut row = Vec::with_capacity(k);
                for pt in &points {
                    match f.evaluate_mod(pt, P) {
                        Some(v) if v != 0 => row.push(inv(v)),
                        _ => continue 'retry,
                    }
                }
                inv_values.push(row);
            }
            return Screen { inv_values, target };
        }
    }
}

fn search_terms(
    r: &RationalFunction,
    candidates: &[Polynomial],
    screen: &Screen,
    t: usize,
) -> Option<RecipSum> {
    let m = candidates.len();
    if m < t {
        return None;
    }
    let mut idx: Vec<usize> = (0..t - 1).collect();
    loop {
        // vectors fixed by the first t-1 indices, plus the target
        let mut rows: Vec<Vec<u64>> = idx.iter().map(|&i| screen.inv_values[i].clone()).collect();
        rows.push(screen.target.clone());
        let null = null_space(rows);
        let start = idx.last().map_or(0, |&i| i + 1);
        for last in start..m {
            let w = &screen.inv_values[last];
            let hit = null
                .iter()
                .all(|c| c.iter().zip(w).fold(0u64, |acc, (a, b)| addm(acc, mulm(*a, *b))) == 0);
            if hit {
                let mut chosen: Vec<&Polynomial> = idx.iter().map(|&i| &candidates[i]).collect();
                chosen.push(&candidates[last]);
                if let Some(w) = confirm(r, &chosen) {
                    return Some(w);
                }
            }
        }
        if !advance(&mut idx, m - 1) {
            return None;
        }
    }
}

/// Next strictly increasing index tuple with entries below `limit`.
fn advance(idx: &mut [usize], limit: usize) -> bool {
    let k = idx.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < limit - (k - i) {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Solves `Σ λ_i / f_i = r` exactly; succeeds only with every `λ_i ≠ 0`.
fn confirm(r: &RationalFunction, fs: &[&Polynomial]) -> Option<RecipSum> {
    let n = r.nvars();
    let big_f = fs.iter().fold(Polynomial::one(n), |acc, f| &acc * *f);
    let cols: Vec<Polynomial> = fs
        .iter()
        .map(|f| &big_f.div_exact(f).expect("factor of product") * r.den())
        .collect();
    let rhs = &big_f * r.num();
    let mut monos: Vec<Vec<u32>> = cols
        .iter()
        .chain(std::iter::once(&rhs))
        .flat_map(|p| p.terms().map(|(e, _)| e.0.clone()).collect::<Vec<_>>())
        .collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<Rational>> = monos
        .iter()
        .map(|m| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c.coefficient(m)).collect();
            row.push(rhs.coefficient(m));
            row
        })
        .collect();
    let lambda = solve_exact(rows, fs.len())?;
    if lambda.iter().any(Zero::is_zero) {
        return None;
    }
    let witness = RecipSum::new(
        n,
        fs.iter().zip(&lambda).map(|(f, l)| f.scale(&l.recip())),
    )
    .ok()?;
    (witness.normalize() == *r).then_some(witness)
}

/// Gaussian elimination on an augmented system; `None` if inconsistent.
fn solve_exact(mut rows: Vec<Vec<Rational>>, unknowns: usize) -> Option<Vec<Rational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..=unknowns {
                    let d = &rows[r][j] * &factor;
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational::zero(); unknowns];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rows[i][unknowns].clone();
    }
    Some(sol)
}

/// Basis of `{c : row · c = 0 for every row}` modulo `P`.
fn null_space(mut rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let k = rows.first().map_or(0, Vec::len);
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let iv = inv(rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = mulm(*v, iv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..k {
                    let d = mulm(rows[r][j], f);
                    rows[i][j] = subm(rows[i][j], d);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..k).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; k];
            v[fc] = 1;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = subm(0, rows[i][fc]);
            }
            v
        })
        .collect()
}

fn mulm(a: u64, b: u64) -> u64 {
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

fn inv(a: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a;
    let mut e = P - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mulm(result, base);
        }
        base = mulm(base, base);
        e >>= 1;
    }
    result
}
