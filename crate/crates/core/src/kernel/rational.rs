use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{Polynomial, Rational};
use crate::error::{Error, Result};

/// A reduced fraction of polynomials in canonical form.
///
/// The denominator is integer-primitive with positive graded-lex leading
/// coefficient and shares no factor with the numerator, so equal values have
/// identical representations. Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

/// Reduces `num/den` to canonical form.
pub fn normalize_fraction(num: &Polynomial, den: &Polynomial) -> Result<RationalFunction> {
    RationalFunction::new(num.clone(), den.clone())
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.nvars() != den.nvars() {
            return Err(Error::MismatchedVariables {
                left: num.nvars(),
                right: den.nvars(),
            });
        }
        if num.is_zero() {
            return Ok(Self::zero(num.nvars()));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Ok(Self::from_coprime(num, den))
    }

    /// Builds from a pair already known to be coprime; only the content and
    /// sign are normalized.
    fn from_coprime(num: Polynomial, den: Polynomial) -> Self {
        let (c, den) = den.primitive_split();
        let num = num.scale(&c.recip());
        RationalFunction { num, den }
    }

    pub fn zero(nvars: usize) -> Self {
        RationalFunction {
            num: Polynomial::zero(nvars),
            den: Polynomial::one(nvars),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Polynomial::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(nvars, c))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let n = p.nvars();
        RationalFunction {
            num: p,
            den: Polynomial::one(n),
        }
    }

    /// `1/f`.
    pub fn reciprocal_of(f: &Polynomial) -> Result<Self> {
        Self::new(Polynomial::one(f.nvars()), f.clone())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    /// The value as a polynomial, if the denominator is trivial.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.den == other.den {
            return Self::new(&self.num + &other.num, self.den.clone());
        }
        let g = gcd(&self.den, &other.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = other.den.div_exact(&g).unwrap();
        let num = &(&self.num * &b) + &(&other.num * &a);
        let den = &(&a * &b) * &g;
        Self::new(num, den)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars()));
        }
        // cross-cancel so that the result needs no further gcd
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = other.den.div_exact(&g1).unwrap();
        let n2 = other.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        Ok(Self::from_coprime(&n1 * &n2, &d1 * &d2))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inverse()?)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let e = k.unsigned_abs() as u32;
        Ok(Self::from_coprime(base.num.pow(e), base.den.pow(e)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Evaluates at a rational point; `None` where the denominator vanishes.
    pub fn evaluate(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.evaluate(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.evaluate(point) / d)
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::MismatchedVariables {
                left: self.nvars(),
                right: other.nvars(),
            });
        }
        Ok(())
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                self.$checked(rhs).expect("invalid rational function operation")
            }
        }
        impl $trait<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

/// A polynomial prints bare when it is a single variable or an integer.
pub(crate) fn is_atom(p: &Polynomial) -> bool {
    if p.num_terms() != 1 {
        return p.is_zero();
    }
    let (e, c) = p.leading_term().unwrap();
    if e.total() == 0 {
        c.is_integer() && *c >= Rational::zero()
    } else {
        c.is_one() && e.total() == 1
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if is_atom(&self.den) {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;

    fn xy() -> (Polynomial, Polynomial) {
        (Polynomial::var(2, 0), Polynomial::var(2, 1))
    }

    #[test]
    fn cancellation() {
        let (x, y) = xy();
        let r = normalize_fraction(&(&x.pow(2) - &y.pow(2)), &(&x - &y)).unwrap();
        assert_eq!(r, RationalFunction::from_poly(&x + &y));
    }

    #[test]
    fn content_reduction() {
        let (x, y) = xy();
        let r = normalize_fraction(&x.scale(&rat(2)), &y.scale(&rat(4))).unwrap();
        assert_eq!(r.to_string(), "1/2*X/Y");
        assert_eq!(r.den(), &y);
    }

    #[test]
    fn already_reduced() {
        let (x, y) = xy();
        let r = normalize_fraction(&(&x * &y), &(&x + &y)).unwrap();
        assert_eq!(r.num(), &(&x * &y));
        assert_eq!(r.den(), &(&x + &y));
        assert_eq!(r.to_string(), "X*Y/(X+Y)");
    }

    #[test]
    fn zero_denominator() {
        let (x, _) = xy();
        assert_eq!(
            normalize_fraction(&x, &Polynomial::zero(2)),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn negative_denominator_flips_sign() {
        let (x, y) = xy();
        let r = normalize_fraction(&x, &(&y - &x)).unwrap();
        assert_eq!(r.den(), &(&x - &y));
        assert_eq!(r.num(), &-&x);
    }

    #[test]
    fn field_operations() {
        let (x, y) = xy();
        let a = RationalFunction::reciprocal_of(&x).unwrap();
        let b = RationalFunction::reciprocal_of(&y).unwrap();
        let s = &a + &b;
        assert_eq!(s.to_string(), "(X+Y)/(X*Y)");
        assert!((&s / &s).is_one());
        assert!((&s - &s).is_zero());
        assert_eq!(s.pow(-1).unwrap().to_string(), "X*Y/(X+Y)");
    }
}
