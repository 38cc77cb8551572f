//! Valuations on the rational function field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::kernel::{var_name, Polynomial, RationalFunction};

/// A valuation on `Q(X_1..X_n)`. Variable indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ValuationSpec {
    /// Order of vanishing along `X_i = 0`.
    XAdic(usize),
    /// Lowest total degree (order at the origin).
    Order,
    /// `min{i + h j}` over the terms `s^i u^j` of the image under
    /// `X = s^p`, `Y = (s - u)^q`. Needs exactly two active variables, taken
    /// in increasing order as `X` and `Y`.
    WeightedSub { p: u32, q: u32, h: u32 },
    /// Minimum of `inner` over the coefficients in `X_var`.
    GaussExt { inner: Box<ValuationSpec>, var: usize },
    /// `(inner(f_k), -k)` with `k` the largest index attaining the minimum of
    /// `inner` over the coefficients `f_k` of `X_var^k`; ordered
    /// lexicographically.
    LexComposite { inner: Box<ValuationSpec>, var: usize },
}

/// A valuation value: a vector of integers compared lexicographically, or
/// `+∞` for zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Finite(Vec<i64>),
    Infinite,
}

impl Value {
    pub fn int(v: i64) -> Self {
        Value::Finite(vec![v])
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Finite(v) if v.len() == 1 => Some(v[0]),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Value::Infinite)
    }

    fn sub(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => {
                Value::Finite(a.iter().zip(b).map(|(x, y)| x - y).collect())
            }
            _ => Value::Infinite,
        }
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Infinite, Value::Infinite) => Ordering::Equal,
            (Value::Infinite, _) => Ordering::Greater,
            (_, Value::Infinite) => Ordering::Less,
            (Value::Finite(a), Value::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Value {
    type Output = Value;
    fn add(self, rhs: &Value) -> Value {
        match (self, rhs) {
            (Value::Finite(a), Value::Finite(b)) => {
                Value::Finite(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => Value::Infinite,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Infinite => write!(f, "inf"),
            Value::Finite(v) if v.len() == 1 => write!(f, "{}", v[0]),
            Value::Finite(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

/// Checks `gcd(p, q) = 1` and `lower < p < q`.
pub(crate) fn check_pair(p: u32, q: u32, lower: u32) -> Result<()> {
    let reason = if p <= lower {
        Some(format!("need p > {lower}"))
    } else if p >= q {
        Some("need p < q".to_string())
    } else if p.gcd(&q) != 1 {
        Some("p and q must be coprime".to_string())
    } else {
        None
    };
    match reason {
        Some(reason) => Err(Error::InvalidPair { p, q, reason }),
        None => Ok(()),
    }
}

impl ValuationSpec {
    pub fn xadic(i: usize) -> Self {
        ValuationSpec::XAdic(i)
    }

    pub fn weighted(p: u32, q: u32, h: u32) -> Self {
        ValuationSpec::WeightedSub { p, q, h }
    }

    pub fn gauss(inner: ValuationSpec, var: usize) -> Self {
        ValuationSpec::GaussExt {
            inner: Box::new(inner),
            var,
        }
    }

    pub fn lex(inner: ValuationSpec, var: usize) -> Self {
        ValuationSpec::LexComposite {
            inner: Box::new(inner),
            var,
        }
    }

    /// Number of components of a finite value.
    pub fn rank(&self) -> usize {
        match self {
            ValuationSpec::GaussExt { inner, .. } => inner.rank(),
            ValuationSpec::LexComposite { inner, .. } => inner.rank() + 1,
            _ => 1,
        }
    }

    /// Checks the spec against a ring with `nvars` variables.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        self.validate_on(&(0..nvars).collect::<Vec<_>>())
    }

    fn validate_on(&self, active: &[usize]) -> Result<()> {
        match self {
            ValuationSpec::XAdic(i) => {
                if *i == 0 || !active.contains(&(i - 1)) {
                    return Err(Error::InvalidValuation(format!(
                        "variable {i} is not available here"
                    )));
                }
                Ok(())
            }
            ValuationSpec::Order => Ok(()),
            ValuationSpec::WeightedSub { p, q, h } => {
                check_pair(*p, *q, 0)?;
                if *h < 1 || *h > p * q + 1 {
                    return Err(Error::InvalidValuation(format!(
                        "weight h = {h} must lie in 1..={}",
                        p * q + 1
                    )));
                }
                if active.len() != 2 {
                    return Err(Error::UnsupportedArity(active.len()));
                }
                Ok(())
            }
            ValuationSpec::GaussExt { inner, var } | ValuationSpec::LexComposite { inner, var } => {
                if *var == 0 || !active.contains(&(var - 1)) {
                    return Err(Error::InvalidValuation(format!(
                        "variable {var} is not available here"
                    )));
                }
                let rest: Vec<usize> = active.iter().copied().filter(|&i| i != var - 1).collect();
                inner.validate_on(&rest)
            }
        }
    }

    /// Parses `xadic:i`, `order`, `wsub:p,q,h`, `gauss:VAR:SPEC` or
    /// `lex:VAR:SPEC`, where `VAR` is a variable name or a 1-based index.
    pub fn parse(text: &str, nvars: usize) -> Result<Self> {
        let text = text.trim();
        let (head, rest) = match text.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (text, None),
        };
        let bad = |msg: &str| Error::InvalidValuation(format!("{msg} in `{text}`"));
        let spec = match (head.to_ascii_lowercase().as_str(), rest) {
            ("order", None) => ValuationSpec::Order,
            ("xadic", Some(v)) => ValuationSpec::XAdic(parse_var(v, nvars)?),
            ("wsub", Some(args)) => {
                let nums: Vec<u32> = args
                    .split(',')
                    .map(|s| s.trim().parse::<u32>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad("expected three nonnegative integers"))?;
                let [p, q, h] = nums[..] else {
                    return Err(bad("expected p,q,h"));
                };
                ValuationSpec::WeightedSub { p, q, h }
            }
            ("gauss" | "lex", Some(r)) => {
                let (v, inner) = r.split_once(':').ok_or_else(|| bad("expected VAR:SPEC"))?;
                let var = parse_var(v, nvars)?;
                let inner = Box::new(ValuationSpec::parse(inner, nvars)?);
                if head.eq_ignore_ascii_case("gauss") {
                    ValuationSpec::GaussExt { inner, var }
                } else {
                    ValuationSpec::LexComposite { inner, var }
                }
            }
            _ => return Err(bad("unknown valuation")),
        };
        spec.validate(nvars)?;
        Ok(spec)
    }
}

fn parse_var(text: &str, nvars: usize) -> Result<usize> {
    let t = text.trim();
    if let Ok(i) = t.parse::<usize>() {
        if i >= 1 && i <= nvars {
            return Ok(i);
        }
        return Err(Error::InvalidValuation(format!(
            "variable index {i} out of range 1..={nvars}"
        )));
    }
    (0..nvars)
        .find(|&i| var_name(nvars, i).eq_ignore_ascii_case(t) || format!("X{}", i + 1).eq_ignore_ascii_case(t))
        .map(|i| i + 1)
        .ok_or_else(|| Error::InvalidValuation(format!("unknown variable `{t}`")))
}

impl fmt::Display for ValuationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuationSpec::XAdic(i) => write!(f, "xadic:{i}"),
            ValuationSpec::Order => write!(f, "order"),
            ValuationSpec::WeightedSub { p, q, h } => write!(f, "wsub:{p},{q},{h}"),
            ValuationSpec::GaussExt { inner, var } => write!(f, "gauss:{var}:{inner}"),
            ValuationSpec::LexComposite { inner, var } => write!(f, "lex:{var}:{inner}"),
        }
    }
}

/// Value of `r` under `spec`; `+∞` for zero.
pub fn value(spec: &ValuationSpec, r: &RationalFunction) -> Result<Value> {
    spec.validate(r.nvars())?;
    if r.is_zero() {
        return Ok(Value::Infinite);
    }
    let active: Vec<usize> = (0..r.nvars()).collect();
    let a = poly_value(spec, r.num(), &active);
    let b = poly_value(spec, r.den(), &active);
    Ok(Value::Finite(a).sub(&Value::Finite(b)))
}

/// Value of a polynomial; `+∞` for zero.
pub fn value_poly(spec: &ValuationSpec, f: &Polynomial) -> Result<Value> {
    spec.validate(f.nvars())?;
    if f.is_zero() {
        return Ok(Value::Infinite);
    }
    let active: Vec<usize> = (0..f.nvars()).collect();
    Ok(Value::Finite(poly_value(spec, f, &active)))
}

fn poly_value(spec: &ValuationSpec, f: &Polynomial, active: &[usize]) -> Vec<i64> {
    debug_assert!(!f.is_zero());
    match spec {
        ValuationSpec::XAdic(i) => vec![f.min_exponents()[i - 1] as i64],
        ValuationSpec::Order => vec![f.low_degree().unwrap_or(0) as i64],
        ValuationSpec::WeightedSub { p, q, h } => vec![weighted_value(f, *p, *q, *h, active)],
        ValuationSpec::GaussExt { inner, var } => {
            let rest: Vec<usize> = active.iter().copied().filter(|&i| i != var - 1).collect();
            f.coefficients_in(var - 1)
                .iter()
                .filter(|c| !c.is_zero())
                .map(|c| poly_value(inner, c, &rest))
                .min()
                .expect("nonzero polynomial has a coefficient")
        }
        ValuationSpec::LexComposite { inner, var } => {
            let rest: Vec<usize> = active.iter().copied().filter(|&i| i != var - 1).collect();
            let mut best: Option<(Vec<i64>, usize)> = None;
            for (k, c) in f.coefficients_in(var - 1).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let v = poly_value(inner, c, &rest);
                // ties go to the larger index
                if best.as_ref().is_none_or(|(b, _)| v <= *b) {
                    best = Some((v, k));
                }
            }
            let (mut v, k) = best.expect("nonzero polynomial has a coefficient");
            v.push(-(k as i64));
            v
        }
    }
}

fn weighted_value(f: &Polynomial, p: u32, q: u32, h: u32, active: &[usize]) -> i64 {
    let n = f.nvars();
    let (x, y) = (active[0], active[1]);
    // images live in Q[s, u]
    let s = Polynomial::var(2, 0);
    let u = Polynomial::var(2, 1);
    let mut images = vec![Polynomial::zero(2); n];
    images[x] = s.pow(p);
    images[y] = (&s - &u).pow(q);
    let g = f.substitute(&images).expect("one image per variable");
    g.terms()
        .map(|(e, _)| e.0[0] as i64 + h as i64 * e.0[1] as i64)
        .min()
        .expect("substitution is injective")
}

/// `θ = X^q Y^p / (Y^p - X^q)` in `Q(X, Y)`.
pub fn theta(p: u32, q: u32) -> Result<RationalFunction> {
    check_pair(p, q, 0)?;
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    RationalFunction::new(&x.pow(q) * &y.pow(p), &y.pow(p) - &x.pow(q))
}

/// `β = X^(2q-c) Y^d / (X^q - Y^p)` with `qd - pc = 1`, `0 < c < q`,
/// `0 < d < p`. Returns `(β, c, d)`.
pub fn beta(p: u32, q: u32) -> Result<(RationalFunction, u32, u32)> {
    check_pair(p, q, 1)?;
    // d = q^{-1} mod p
    let d = (1..p).find(|d| (q * d) % p == 1).expect("q is invertible mod p");
    let c = (q * d - 1) / p;
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let b = RationalFunction::new(&x.pow(2 * q - c) * &y.pow(d), &x.pow(q) - &y.pow(p))?;
    Ok((b, c, d))
}
