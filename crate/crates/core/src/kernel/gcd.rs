//! Multivariate gcd by recursive primitive remainder sequences.

use num_bigint::BigInt;
use num_integer::Integer;

use super::poly::{modinv, modpow, Polynomial};

const P: u64 = (1 << 61) - 1;

/// Greatest common divisor, integer-primitive with positive leading
/// coefficient. `gcd(0, 0) = 0`.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    assert_eq!(f.nvars(), g.nvars(), "gcd operands in different rings");
    if f.is_zero() {
        return g.normalized();
    }
    if g.is_zero() {
        return f.normalized();
    }
    let n = f.nvars();
    if f.is_constant() || g.is_constant() {
        return Polynomial::one(n);
    }
    let f = f.normalized();
    let g = g.normalized();
    if f == g {
        return f;
    }

    // Pull out the common monomial factor first; it is cheap and keeps the
    // remainder sequences small.
    let tf = f.min_exponents();
    let tg = g.min_exponents();
    let common: Vec<u32> = tf.iter().zip(&tg).map(|(a, b)| (*a).min(*b)).collect();
    let f0 = f.unshift(&tf).expect("monomial content divides");
    let g0 = g.unshift(&tg).expect("monomial content divides");
    let core = gcd_core(&f0, &g0);
    core.shift(&common).normalized()
}

/// gcd of two nonzero polynomials, neither divisible by any variable.
fn gcd_core(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let n = f.nvars();
    if f.is_constant() || g.is_constant() || provably_coprime(f, g) {
        return Polynomial::one(n);
    }
    if f.div_exact(g).is_some() {
        return g.normalized();
    }
    if g.div_exact(f).is_some() {
        return f.normalized();
    }
    let Some(var) = (0..n).find(|&i| f.involves(i) || g.involves(i)) else {
        return Polynomial::one(n);
    };
    let (cf, pf) = split_content(f, var);
    let (cg, pg) = split_content(g, var);
    let c = gcd(&cf, &cg);
    let p = if pf.is_constant() || pg.is_constant() {
        Polynomial::one(n)
    } else {
        primitive_prs(pf, pg, var)
    };
    (&c * &p).normalized()
}

/// Content (gcd of coefficients) with respect to `var`, and the primitive part.
fn split_content(f: &Polynomial, var: usize) -> (Polynomial, Polynomial) {
    let coeffs = f.coefficients_in(var);
    let mut c = Polynomial::zero(f.nvars());
    for k in coeffs.iter().rev().filter(|k| !k.is_zero()) {
        c = gcd(&c, k);
        if c.is_one() {
            return (c, f.normalized());
        }
    }
    let pp = f.div_exact(&c).expect("content divides");
    (c, pp.normalized())
}

fn primitive_prs(a: Polynomial, b: Polynomial, var: usize) -> Polynomial {
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if b.degree_in(var) == 0 {
            // both primitive in `var`; a nonzero remainder free of `var` means
            // the gcd has degree 0 in `var`, hence is a unit.
            return Polynomial::one(a.nvars());
        }
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            return b.normalized();
        }
        let (_, pr) = split_content(&r, var);
        a = b;
        b = pr;
    }
}

/// Pseudo-remainder of `a` by `b` with respect to `var`.
pub(crate) fn pseudo_remainder(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let n = a.nvars();
    let db = b.degree_in(var);
    let lb = b.leading_coeff_in(var);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = r.leading_coeff_in(var);
        let mut shift = vec![0; n];
        shift[var] = dr - db;
        r = &(&r * &lb) - &(&lr * &b.shift(&shift));
        r = r.normalized();
    }
    r
}

/// Modular certificate that `f` and `g` share no nonconstant factor.
///
/// For each variable, the other variables are fixed at a point modulo a prime.
/// When the image of `f` keeps its degree in that variable, the degree of any
/// common factor is bounded by the degree of the gcd of the images. A `false`
/// result is inconclusive.
fn provably_coprime(f: &Polynomial, g: &Polynomial) -> bool {
    let n = f.nvars();
    let point: Vec<u64> = (0..n as u64)
        .map(|i| (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(i + 1) >> 4) % P)
        .collect();
    (0..n).all(|var| {
        if !(f.involves(var) && g.involves(var)) {
            return true;
        }
        let (Some(a), Some(b)) = (image(f, var, &point), image(g, var, &point)) else {
            return false;
        };
        let kept = a.len() == f.degree_in(var) as usize + 1 || b.len() == g.degree_in(var) as usize + 1;
        kept && univariate_gcd_degree(a, b) == 0
    })
}

/// Coefficients in `var`, low degree first, of `f` with the other variables
/// fixed at `point`, modulo `P`. Trailing zeros are trimmed.
fn image(f: &Polynomial, var: usize, point: &[u64]) -> Option<Vec<u64>> {
    let pb = BigInt::from(P);
    let mut out = vec![0u64; f.degree_in(var) as usize + 1];
    for (e, c) in f.terms() {
        let num: u64 = c.numer().mod_floor(&pb).try_into().ok()?;
        let den: u64 = c.denom().mod_floor(&pb).try_into().ok()?;
        let mut t = mul(num, modinv(den, P)?);
        for (j, (&x, &k)) in point.iter().zip(&e.0).enumerate() {
            if j != var {
                t = mul(t, modpow(x, k as u64, P));
            }
        }
        let slot = &mut out[e.0[var] as usize];
        *slot = (*slot + t) % P;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    Some(out)
}

fn mul(a: u64, b: u64) -> u64 {
    (a as u128 * b as u128 % P as u128) as u64
}

/// Degree of the gcd of two univariate polynomials over `Z/P`; zero inputs
/// count as degree-zero.
fn univariate_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let db = b.len() - 1;
        let inv = modinv(b[db], P).expect("trimmed leading coefficient");
        while a.len() > db {
            let top = a.len() - 1;
            let c = mul(a[top], inv);
            for (i, &bi) in b.iter().enumerate() {
                let idx = top - db + i;
                a[idx] = (a[idx] + P - mul(c, bi)) % P;
            }
            a.pop();
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}
