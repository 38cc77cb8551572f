//! Exact polynomial and rational-function arithmetic over the rationals.

mod gcd;
pub(crate) mod packed;
mod poly;
mod rational;

pub use gcd::gcd;
pub use poly::{poly_op, rat, var_name, Exponents, PolyOp, Polynomial, Rational};
pub use rational::{normalize_fraction, RationalFunction};

use crate::error::{Error, Result};

/// Per-variable exponent data of a nonzero polynomial: `t[i]` is the largest
/// power of `X_i` dividing it, `deg[i]` its `X_i`-degree and `a[i] = deg[i] - t[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentProfile {
    pub t: Vec<u32>,
    pub a: Vec<u32>,
    pub deg: Vec<u32>,
}

pub fn exponent_profile(f: &Polynomial) -> Result<ExponentProfile> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let t = f.min_exponents();
    let deg = f.degrees();
    let a = deg.iter().zip(&t).map(|(d, t)| d - t).collect();
    Ok(ExponentProfile { t, a, deg })
}

/// Replaces each variable of `f` by the matching image.
pub fn substitute(f: &Polynomial, images: &[Polynomial]) -> Result<Polynomial> {
    f.substitute(images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profiles() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let p = exponent_profile(&(&(&x.pow(2) * &y) + &x.pow(3))).unwrap();
        assert_eq!((p.t, p.deg, p.a), (vec![2, 0], vec![3, 1], vec![1, 1]));
        let p = exponent_profile(&(&x.pow(2) * &y)).unwrap();
        assert_eq!((p.t, p.a), (vec![2, 1], vec![0, 0]));
        let p = exponent_profile(&(&x + &y)).unwrap();
        assert_eq!((p.t, p.a), (vec![0, 0], vec![1, 1]));
        assert_eq!(exponent_profile(&Polynomial::zero(2)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn binomial_substitution() {
        // X^2 - Y under X = s, Y = (s-u)^2
        let s = Polynomial::var(2, 0);
        let u = Polynomial::var(2, 1);
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let f = &x.pow(2) - &y;
        let r = substitute(&f, &[s.clone(), (&s - &u).pow(2)]).unwrap();
        let two = Rational::from_integer(2.into());
        assert_eq!(r, &(&s * &u).scale(&two) - &u.pow(2));
        assert_eq!(substitute(&x, &[s.pow(3), (&s - &u).pow(5)]).unwrap(), s.pow(3));
    }
}
