use crate::error::{Error, Result};
use crate::kernel::{exponent_profile, Polynomial, RationalFunction};

/// `σ(1/f) = X^(a+t) / fstar`, with `fstar` divisible by no variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarForm {
    pub fstar: Polynomial,
    pub a: Vec<u32>,
    pub t: Vec<u32>,
}

impl StarForm {
    /// `X^(a+t) / fstar` as a rational function.
    pub fn quotient(&self) -> RationalFunction {
        let e: Vec<u32> = self.a.iter().zip(&self.t).map(|(a, t)| a + t).collect();
        RationalFunction::new(Polynomial::power_product(&e), self.fstar.clone())
            .expect("fstar is nonzero")
    }
}

pub fn star_transform(f: &Polynomial) -> Result<StarForm> {
    let profile = exponent_profile(f)?;
    let f0 = f.unshift(&profile.t).expect("monomial content divides");
    Ok(StarForm {
        fstar: f0.reflect(&profile.a),
        a: profile.a,
        t: profile.t,
    })
}

/// `σ(f)` for a polynomial, as a rational function.
pub fn sigma_poly(f: &Polynomial) -> RationalFunction {
    sigma(&RationalFunction::from_poly(f.clone()))
}

/// The involution `X_i -> 1/X_i`.
pub fn sigma(r: &RationalFunction) -> RationalFunction {
    if r.is_zero() {
        return r.clone();
    }
    let dn = r.num().degrees();
    let dd = r.den().degrees();
    let num = r.num().reflect(&dn);
    let den = r.den().reflect(&dd);
    // σ(num/den) = X^(dd - dn) · num'/den'
    let up: Vec<u32> = dd.iter().zip(&dn).map(|(d, n)| d.saturating_sub(*n)).collect();
    let down: Vec<u32> = dn.iter().zip(&dd).map(|(n, d)| n.saturating_sub(*d)).collect();
    RationalFunction::new(num.shift(&up), den.shift(&down)).expect("reflection of nonzero")
}

/// `σ(1/f)` computed from the star form; fails on `f = 0`.
pub fn sigma_recip(f: &Polynomial) -> Result<RationalFunction> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(star_transform(f)?.quotient())
}
