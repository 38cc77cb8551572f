//! Named, reproducible checks of concrete identities and valuation values.
//!
//! Every certificate recomputes each claimed equality with exact arithmetic
//! and records it either as a witness or as a failure. Where a statement is
//! only partly computable the report says which ingredients were checked in a
//! `scope` witness.

use std::fmt::{self, Display};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{Polynomial, Rational, RationalFunction};
use crate::recip::{sigma, sigma_recip, RecipSum};
use crate::valuation::{beta, check_pair, theta, value, ValuationSpec, Value};

/// Seed used by sampling certificates unless one is given.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Param {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub label: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of one certificate. `passed` holds exactly when `failures` is
/// empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub name: String,
    pub parameters: Vec<Param>,
    pub passed: bool,
    pub witnesses: Vec<Witness>,
    pub failures: Vec<Failure>,
    pub seed: Option<u64>,
}

impl CertificateReport {
    fn new(name: &str) -> Self {
        CertificateReport {
            name: name.to_string(),
            parameters: Vec::new(),
            passed: true,
            witnesses: Vec::new(),
            failures: Vec::new(),
            seed: None,
        }
    }

    fn param(mut self, name: &str, value: impl Display) -> Self {
        self.parameters.push(Param {
            name: name.to_string(),
            value: value.to_string(),
        });
        self
    }

    fn witness(&mut self, label: impl Into<String>, value: impl Display) {
        self.witnesses.push(Witness {
            label: label.into(),
            value: value.to_string(),
        });
    }

    fn fail(&mut self, label: impl Into<String>, expected: impl Display, actual: impl Display) {
        self.failures.push(Failure {
            label: label.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
        self.passed = false;
    }

    /// Records `actual` as a witness if it equals `expected`, else a failure.
    fn expect_eq<T: PartialEq + Display>(&mut self, label: impl Into<String>, expected: &T, actual: &T) {
        if expected == actual {
            self.witness(label, actual);
        } else {
            self.fail(label, expected, actual);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Aligned human-readable form.
impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        writeln!(f, "{:<12} {}", "certificate", self.name)?;
        writeln!(f, "{:<12} {}", "status", status)?;
        let params: Vec<String> = self
            .parameters
            .iter()
            .map(|p| format!("{}={}", p.name, p.value))
            .collect();
        if !params.is_empty() {
            writeln!(f, "{:<12} {}", "parameters", params.join(" "))?;
        }
        if let Some(seed) = self.seed {
            writeln!(f, "{:<12} {}", "seed", seed)?;
        }
        let width = self
            .witnesses
            .iter()
            .map(|w| w.label.len())
            .chain(self.failures.iter().map(|x| x.label.len()))
            .max()
            .unwrap_or(0);
        for w in &self.witnesses {
            writeln!(f, "  {:<width$}  {}", w.label, w.value)?;
        }
        for x in &self.failures {
            writeln!(
                f,
                "  {:<width$}  expected {} got {}",
                x.label, x.expected, x.actual
            )?;
        }
        Ok(())
    }
}

fn xy() -> (Polynomial, Polynomial) {
    (Polynomial::var(2, 0), Polynomial::var(2, 1))
}

fn rf(num: Polynomial, den: Polynomial) -> RationalFunction {
    RationalFunction::new(num, den).expect("nonzero denominator")
}

/// `s = σ(1/(X+Y))`, `t = X - s`, `u = Y - s` satisfy `s² = t·u` and each has
/// order value 1, so `s` has two different factorizations into irreducibles.
pub fn check_non_ufd() -> CertificateReport {
    let (x, y) = xy();
    let s = sigma_recip(&(&x + &y)).expect("nonzero");
    let t = &RationalFunction::from_poly(x) - &s;
    let u = &RationalFunction::from_poly(y) - &s;
    non_ufd_report(s, t, u)
}

pub(crate) fn non_ufd_report(
    s: RationalFunction,
    t: RationalFunction,
    u: RationalFunction,
) -> CertificateReport {
    let (x, y) = xy();
    let mut rep = CertificateReport::new("non_ufd");
    let sum = &x + &y;
    rep.expect_eq("s", &rf(&x * &y, sum.clone()), &s);
    rep.expect_eq("t", &rf(x.pow(2), sum.clone()), &t);
    rep.expect_eq("u", &rf(y.pow(2), sum), &u);
    let s2 = s.pow(2).expect("nonnegative power");
    let tu = &t * &u;
    if s2 == tu {
        rep.witness("s^2 = t*u", &s2);
    } else {
        rep.fail("s^2 = t*u", &s2, &tu);
    }
    for (label, r) in [("v(s)", &s), ("v(t)", &t), ("v(u)", &u)] {
        let v = value(&ValuationSpec::Order, r).expect("two variables");
        rep.expect_eq(label, &Value::int(1), &v);
    }
    rep
}

/// `β^p = θ'^d (θ' + X^q)^(p-d) X` with `θ' = X^q Y^p / (X^q - Y^p)`, and
/// `v(β) = 1` for the weighted valuation with `h = pq + 1`.
pub fn check_beta_integrality(p: u32, q: u32) -> Result<CertificateReport> {
    let (b, c, d) = beta(p, q)?;
    let mut rep = CertificateReport::new("beta_integrality")
        .param("p", p)
        .param("q", q);
    rep.witness("scope", "identity and valuation ingredients");
    rep.witness("c", c);
    rep.witness("d", d);
    rep.witness("beta", &b);
    let (x, _) = xy();
    let th = -&theta(p, q)?;
    let xq = RationalFunction::from_poly(x.pow(q));
    let rhs = &(&th.pow(d as i64)? * &(&th + &xq).pow((p - d) as i64)?)
        * &RationalFunction::from_poly(x);
    let lhs = b.pow(p as i64)?;
    rep.expect_eq("beta^p", &rhs, &lhs);
    let h = p * q + 1;
    let v = value(&ValuationSpec::weighted(p, q, h), &b)?;
    rep.expect_eq(format!("v_{{{p},{q},{h}}}(beta)"), &Value::int(1), &v);
    Ok(rep)
}

/// Values of `X^q - Y^p` and of `θ` under the weighted valuation with weight
/// `h` on `u`: `h + pq - 1` and `pq + 1 - h`.
pub fn check_theta_values(p: u32, q: u32, h: u32) -> Result<CertificateReport> {
    check_pair(p, q, 0)?;
    if h < 1 || h > p * q + 1 {
        return Err(Error::InvalidPair {
            p,
            q,
            reason: format!("need 1 <= h <= {}", p * q + 1),
        });
    }
    let (x, y) = xy();
    let spec = ValuationSpec::weighted(p, q, h);
    let mut rep = CertificateReport::new("theta_values")
        .param("p", p)
        .param("q", q)
        .param("h", h);
    let b = RationalFunction::from_poly(&x.pow(q) - &y.pow(p));
    let pq = (p * q) as i64;
    let h = h as i64;
    rep.expect_eq("v(X^q-Y^p)", &Value::int(h + pq - 1), &value(&spec, &b)?);
    rep.expect_eq("v(theta)", &Value::int(pq + 1 - h), &value(&spec, &theta(p, q)?)?);
    Ok(rep)
}

/// Divisibility by `X^q - Y^p` against vanishing of `g(s^p, s^q)`.
pub fn check_udiv_equivalence(p: u32, q: u32, g: &Polynomial) -> Result<CertificateReport> {
    check_pair(p, q, 0)?;
    if g.nvars() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            got: g.nvars(),
        });
    }
    let (x, y) = xy();
    let binomial = &x.pow(q) - &y.pow(p);
    let divisible = binomial.divides(g);
    let s = Polynomial::var(2, 0);
    let image = g.substitute(&[s.pow(p), s.pow(q)])?;
    let vanishes = image.is_zero();
    let mut rep = CertificateReport::new("udiv_equivalence")
        .param("p", p)
        .param("q", q)
        .param("g", g);
    rep.witness("g(X^p,X^q)", &image);
    rep.witness("divisible", divisible);
    rep.expect_eq("vanishes", &divisible, &vanishes);
    Ok(rep)
}

/// Matrix of `v_{p,q,pq+1}(θ_{r,s})`: zero on the diagonal and `max(qr, ps)`
/// elsewhere, each entry computed by the valuation and by the formula.
pub fn check_prime_separation(pairs: &[(u32, u32)]) -> Result<CertificateReport> {
    for &(p, q) in pairs {
        check_pair(p, q, 0)?;
    }
    for (i, a) in pairs.iter().enumerate() {
        if pairs[..i].contains(a) {
            return Err(Error::PreconditionViolated(format!(
                "pair ({}, {}) listed twice",
                a.0, a.1
            )));
        }
    }
    let listed: Vec<String> = pairs.iter().map(|(p, q)| format!("({p},{q})")).collect();
    let mut rep = CertificateReport::new("prime_separation").param("pairs", listed.join(","));
    let thetas: Vec<RationalFunction> = pairs
        .iter()
        .map(|&(r, s)| theta(r, s))
        .collect::<Result<_>>()?;
    for &(p, q) in pairs {
        let spec = ValuationSpec::weighted(p, q, p * q + 1);
        let mut row = Vec::with_capacity(pairs.len());
        for (&(r, s), th) in pairs.iter().zip(&thetas) {
            let v = value(&spec, th)?;
            let expected = if (p, q) == (r, s) {
                0
            } else {
                ((q * r).max(p * s)) as i64
            };
            if v != Value::int(expected) {
                rep.fail(format!("M[({p},{q})][({r},{s})]"), expected, &v);
            }
            row.push(v.to_string());
        }
        rep.witness(format!("row ({p},{q})"), row.join(" "));
    }
    Ok(rep)
}

/// `Y·θ = X^q (θ + Y)` for `θ = θ_{1,q}` and `v_{1,q,q+1}(θ) = 0`.
pub fn check_finite_conductor_witness(q: u32) -> Result<CertificateReport> {
    check_pair(1, q, 0)?;
    let (x, y) = xy();
    let th = theta(1, q)?;
    let yr = RationalFunction::from_poly(y);
    let lhs = &yr * &th;
    let rhs = &RationalFunction::from_poly(x.pow(q)) * &(&th + &yr);
    let mut rep = CertificateReport::new("finite_conductor_witness").param("q", q);
    rep.witness("scope", "identity and valuation ingredients");
    rep.witness("theta", &th);
    rep.expect_eq("Y*theta = X^q*(theta+Y)", &lhs, &rhs);
    let v = value(&ValuationSpec::weighted(1, q, q + 1), &th)?;
    rep.expect_eq(format!("v_{{1,{q},{}}}(theta)", q + 1), &Value::int(0), &v);
    Ok(rep)
}

/// Under `v = v_{r,r+1,r²+r+1}`: `v(β_{p,q}) ≥ 2r + 1` for each pair and
/// `v(β_{r,r+1}) = 1`.
pub fn check_overring_growth(r: u32, pairs: &[(u32, u32)]) -> Result<CertificateReport> {
    if r <= 1 {
        return Err(Error::PreconditionViolated("need r > 1".into()));
    }
    for &(p, q) in pairs {
        check_pair(p, q, 1)?;
        if r <= p {
            return Err(Error::PreconditionViolated(format!(
                "need r > p, got r = {r} and p = {p}"
            )));
        }
    }
    let h = r * r + r + 1;
    let spec = ValuationSpec::weighted(r, r + 1, h);
    let listed: Vec<String> = pairs.iter().map(|(p, q)| format!("({p},{q})")).collect();
    let mut rep = CertificateReport::new("overring_growth")
        .param("r", r)
        .param("pairs", listed.join(","));
    let bound = Value::int(2 * r as i64 + 1);
    for &(p, q) in pairs {
        let (b, _, _) = beta(p, q)?;
        let v = value(&spec, &b)?;
        let label = format!("v(beta_{{{p},{q}}})");
        if v >= bound {
            rep.witness(label, &v);
        } else {
            rep.fail(label, format!(">= {bound}"), &v);
        }
    }
    let (b, _, _) = beta(r, r + 1)?;
    let v = value(&spec, &b)?;
    rep.expect_eq(format!("v(beta_{{{r},{}}})", r + 1), &Value::int(1), &v);
    Ok(rep)
}

/// Rebuilds `sample = N/D` inside `R[g]`, `g = X_1⋯X_n`: each monomial of `N`
/// is a power of `g` times a product of reciprocals via
/// `X_i = g · 1/∏_{j≠i} X_j`, and `1/D` is a reciprocal.
pub fn check_gdomain_identity(sample: &RationalFunction) -> Result<CertificateReport> {
    if sample.is_zero() {
        return Err(Error::ZeroValue);
    }
    let n = sample.nvars();
    let g = Polynomial::power_product(&vec![1; n]);
    // 1/∏_{j≠i} X_j
    let cofactor: Vec<RecipSum> = (0..n)
        .map(|i| {
            let mut e = vec![1; n];
            e[i] = 0;
            RecipSum::single(Polynomial::power_product(&e))
        })
        .collect::<Result<_>>()?;
    let inv_den = RecipSum::single(sample.den().clone())?;
    let mut rebuilt = RationalFunction::zero(n);
    let mut pieces = Vec::new();
    for (e, c) in sample.num().terms() {
        let mut part = inv_den.scale(c)?;
        for (i, &k) in e.0.iter().enumerate() {
            part = part.mul(&cofactor[i].pow(k))?;
        }
        let gk = g.pow(e.total());
        pieces.push(format!("g^{}*({})", e.total(), part));
        rebuilt = &rebuilt + &(&RationalFunction::from_poly(gk) * &part.normalize());
    }
    let mut rep = CertificateReport::new("gdomain_identity").param("sample", sample);
    rep.witness("g", &g);
    rep.witness("expansion", pieces.join(" + "));
    rep.expect_eq("rebuilt", sample, &rebuilt);
    Ok(rep)
}

/// Order value of `σ(α)`: 1 certifies an irreducible of `R*`, 0 a unit; larger
/// values give no verdict.
pub fn check_irreducibility_witness(alpha: &RecipSum) -> Result<CertificateReport> {
    let a = alpha.normalize();
    if a.is_zero() {
        return Err(Error::ZeroValue);
    }
    let s = sigma(&a);
    let v = value(&ValuationSpec::Order, &s)?;
    let mut rep = CertificateReport::new("irreducibility_witness").param("alpha", alpha);
    rep.witness("sigma(alpha)", &s);
    rep.witness("v_order", &v);
    let verdict = match v.as_int() {
        Some(0) => "unit",
        Some(1) => "irreducible",
        Some(k) if k > 1 => "no verdict",
        _ => {
            rep.fail("v_order", ">= 0", &v);
            "invalid"
        }
    };
    rep.witness("verdict", verdict);
    Ok(rep)
}

/// Random sums of reciprocals of nonconstant polynomials never normalize to
/// a nonconstant polynomial.
pub fn check_egyptian_obstruction(trials: usize, seed: u64) -> Result<CertificateReport> {
    check_egyptian_obstruction_with(trials, seed, &RecipSum::normalize)
}

/// As [`check_egyptian_obstruction`] with a caller-supplied normalizer.
pub fn check_egyptian_obstruction_with(
    trials: usize,
    seed: u64,
    normalize: &dyn Fn(&RecipSum) -> RationalFunction,
) -> Result<CertificateReport> {
    if trials == 0 {
        return Err(Error::PreconditionViolated("need at least one trial".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = CertificateReport::new("egyptian_obstruction").param("trials", trials);
    rep.seed = Some(seed);
    let (mut constants, mut fractions) = (0usize, 0usize);
    for i in 0..trials {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=4);
        let denoms: Vec<Polynomial> = (0..k).map(|_| random_nonconstant(&mut rng, n, 3, 5)).collect();
        let alpha = RecipSum::new(n, denoms)?;
        let r = normalize(&alpha);
        match r.as_polynomial() {
            Some(p) if !p.is_constant() => {
                rep.fail(format!("trial {i}: {alpha}"), "no nonconstant polynomial", p)
            }
            Some(_) => constants += 1,
            None => fractions += 1,
        }
    }
    rep.witness("constant values", constants);
    rep.witness("proper fractions", fractions);
    Ok(rep)
}

/// A random nonconstant polynomial with total degree at most `degree` and
/// integer coefficients bounded by `height` in absolute value.
pub(crate) fn random_nonconstant(rng: &mut impl Rng, n: usize, degree: u32, height: i64) -> Polynomial {
    loop {
        let d = rng.gen_range(1..=degree);
        let terms = rng.gen_range(1..=4);
        let mut f = Polynomial::zero(n);
        for _ in 0..terms {
            let mut e = vec![0u32; n];
            let mut left = rng.gen_range(0..=d);
            for slot in e.iter_mut() {
                let k = rng.gen_range(0..=left);
                *slot = k;
                left -= k;
            }
            let c = rng.gen_range(-height..=height);
            let mono = Polynomial::power_product(&e).scale(&Rational::from_integer(c.into()));
            f = &f + &mono;
        }
        if !f.is_constant() {
            return f;
        }
    }
}

/// Names accepted by [`run_default`], in report order.
pub const NAMES: [&str; 10] = [
    "beta_integrality",
    "egyptian_obstruction",
    "finite_conductor_witness",
    "gdomain_identity",
    "irreducibility_witness",
    "non_ufd",
    "overring_growth",
    "prime_separation",
    "theta_values",
    "udiv_equivalence",
];

/// Runs a certificate with its default parameters.
pub fn run_default(name: &str, seed: u64) -> Result<CertificateReport> {
    let (x, y) = xy();
    match name {
        "non_ufd" => Ok(check_non_ufd()),
        "beta_integrality" => check_beta_integrality(2, 3),
        "theta_values" => check_theta_values(2, 3, 7),
        "udiv_equivalence" => {
            let g = &(&x.pow(3) - &y.pow(2)) * &(&x + &y);
            check_udiv_equivalence(2, 3, &g)
        }
        "prime_separation" => check_prime_separation(&[(1, 2), (2, 3), (3, 4), (2, 5), (3, 5)]),
        "finite_conductor_witness" => check_finite_conductor_witness(2),
        "overring_growth" => check_overring_growth(4, &[(2, 3)]),
        "gdomain_identity" => check_gdomain_identity(&rf(x, y)),
        "irreducibility_witness" => check_irreducibility_witness(&RecipSum::single(&x + &y)?),
        "egyptian_obstruction" => check_egyptian_obstruction(500, seed),
        other => Err(Error::PreconditionViolated(format!(
            "unknown certificate {other}"
        ))),
    }
}

/// Every certificate with default parameters, in name order.
pub fn run_all(seed: u64) -> Vec<CertificateReport> {
    NAMES
        .iter()
        .map(|name| run_default(name, seed).expect("default parameters are valid"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;

    #[test]
    fn non_ufd_passes_and_detects_perturbation() {
        let rep = check_non_ufd();
        assert!(rep.passed, "{rep}");
        let s2 = rep.witnesses.iter().find(|w| w.label == "s^2 = t*u").unwrap();
        assert_eq!(s2.value, "X^2*Y^2/(X^2+2*X*Y+Y^2)");

        let (x, y) = xy();
        let s = rf(&x * &y, &x + &y);
        let t = rf(x.pow(3), &x + &y);
        let u = rf(y.pow(2), &x + &y);
        let bad = non_ufd_report(s, t, u);
        assert!(!bad.passed);
        assert!(bad.failures.iter().any(|f| f.label == "s^2 = t*u"));
    }

    #[test]
    fn beta_examples() {
        let rep = check_beta_integrality(2, 3).unwrap();
        assert!(rep.passed, "{rep}");
        let w = rep.witnesses.iter().find(|w| w.label == "beta^p").unwrap();
        let (x, y) = xy();
        assert_eq!(w.value, rf(&x.pow(10) * &y.pow(2), (&x.pow(3) - &y.pow(2)).pow(2)).to_string());
        assert!(check_beta_integrality(3, 4).unwrap().passed);
        assert!(matches!(check_beta_integrality(2, 4), Err(Error::InvalidPair { .. })));
    }

    #[test]
    fn theta_examples() {
        for (p, q, h, vb, vt) in [(2, 3, 7, 12, 0), (1, 2, 3, 4, 0), (2, 3, 1, 6, 6)] {
            let rep = check_theta_values(p, q, h).unwrap();
            assert!(rep.passed, "{rep}");
            assert_eq!(rep.witnesses[0].value, vb.to_string());
            assert_eq!(rep.witnesses[1].value, vt.to_string());
        }
        assert!(check_theta_values(2, 3, 8).is_err());
    }

    #[test]
    fn udiv_examples() {
        let (x, y) = xy();
        let one = Polynomial::one(2);
        let r = check_udiv_equivalence(1, 2, &(&y - &x.pow(2))).unwrap();
        assert!(r.passed);
        assert!(r.witnesses.iter().any(|w| w.label == "divisible" && w.value == "true"));
        let r = check_udiv_equivalence(2, 3, &(&(&x.pow(3) - &y.pow(2)) + &one)).unwrap();
        assert!(r.passed);
        assert!(r.witnesses.iter().any(|w| w.label == "divisible" && w.value == "false"));
        let g = &(&x.pow(3) - &y.pow(2)) * &(&x + &y);
        assert!(check_udiv_equivalence(2, 3, &g).unwrap().passed);
    }

    #[test]
    fn prime_separation_examples() {
        let r = check_prime_separation(&[(1, 2), (2, 3)]).unwrap();
        assert!(r.passed, "{r}");
        assert_eq!(r.witnesses[0].value, "0 4");
        let r = check_prime_separation(&[(2, 3), (3, 4)]).unwrap();
        assert_eq!(r.witnesses[0].value, "0 9");
        assert_eq!(r.witnesses[1].value, "9 0");
        assert!(check_prime_separation(&[(1, 2)]).unwrap().passed);
        assert!(check_prime_separation(&[(1, 2), (1, 2)]).is_err());
    }

    #[test]
    fn finite_conductor_examples() {
        let r = check_finite_conductor_witness(2).unwrap();
        assert!(r.passed, "{r}");
        let (x, y) = xy();
        let expected = rf(&x.pow(2) * &y.pow(2), &y - &x.pow(2));
        assert!(r.witnesses.iter().any(|w| w.value == expected.to_string()));
        assert!(check_finite_conductor_witness(3).unwrap().passed);
        assert!(matches!(check_finite_conductor_witness(1), Err(Error::InvalidPair { .. })));
    }

    #[test]
    fn overring_examples() {
        let r = check_overring_growth(4, &[(2, 3)]).unwrap();
        assert!(r.passed, "{r}");
        assert!(check_overring_growth(3, &[(2, 3)]).is_ok());
        assert!(matches!(
            check_overring_growth(2, &[(2, 3)]),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn gdomain_examples() {
        let (x, y) = xy();
        assert!(check_gdomain_identity(&rf(x.clone(), y.clone())).unwrap().passed);
        assert!(check_gdomain_identity(&RationalFunction::constant(2, rat(5))).unwrap().passed);
        let s = rf(&x.pow(2) + &y, &x - &y);
        assert!(check_gdomain_identity(&s).unwrap().passed);
        let three = RationalFunction::from_poly(Polynomial::var(3, 2));
        assert!(check_gdomain_identity(&three).unwrap().passed);
        assert_eq!(
            check_gdomain_identity(&RationalFunction::zero(2)),
            Err(Error::ZeroValue)
        );
    }

    #[test]
    fn irreducibility_examples() {
        let (x, y) = xy();
        let verdict = |a: &RecipSum| {
            let r = check_irreducibility_witness(a).unwrap();
            assert!(r.passed);
            r.witnesses.last().unwrap().value.clone()
        };
        assert_eq!(verdict(&RecipSum::single(&x + &y).unwrap()), "irreducible");
        assert_eq!(verdict(&RecipSum::single(Polynomial::from_int(2, 2)).unwrap()), "unit");
        let sq = RecipSum::single(x.clone()).unwrap().pow(2);
        assert_eq!(verdict(&sq), "no verdict");
        let zero = RecipSum::new(2, [x.clone(), -&x]).unwrap();
        assert_eq!(check_irreducibility_witness(&zero), Err(Error::ZeroValue));
    }

    #[test]
    fn egyptian_obstruction_flags_bad_normalizer() {
        let rep = check_egyptian_obstruction(50, 7).unwrap();
        assert!(rep.passed, "{rep}");
        assert_eq!(rep.seed, Some(7));
        let x = Polynomial::var(2, 0);
        let cancel = RecipSum::new(2, [x.clone(), -&x]).unwrap();
        assert!(cancel.normalize().is_zero());
        let liar = |_: &RecipSum| RationalFunction::from_poly(Polynomial::var(2, 0));
        let rep = check_egyptian_obstruction_with(3, 7, &liar).unwrap();
        assert!(!rep.passed);
        assert_eq!(rep.failures.len(), 3);
    }

    #[test]
    fn reports_serialize_with_fixed_fields() {
        let rep = check_beta_integrality(2, 3).unwrap();
        let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
        let mut keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        keys.sort();
        assert_eq!(
            keys,
            ["failures", "name", "parameters", "passed", "seed", "witnesses"]
        );
        assert!(rep.to_string().contains("beta_integrality"));
    }

    #[test]
    fn all_defaults_pass() {
        let reports = run_all(DEFAULT_SEED);
        assert_eq!(reports.len(), NAMES.len());
        for r in &reports {
            assert!(r.passed, "{r}");
        }
    }
}
