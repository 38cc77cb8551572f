//! Acceptance suite: one PASS/FAIL line per criterion, with its tolerance and
//! time limit. Exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use recipcas::certificates::{
    check_beta_integrality, check_egyptian_obstruction, check_finite_conductor_witness,
    check_non_ufd, check_overring_growth, check_prime_separation, check_theta_values,
    check_udiv_equivalence, CertificateReport,
};
use recipcas::cli::{parse_expression, Parsed};
use recipcas::kernel::{rat, Rational};
use recipcas::recip::{brute_force_length, invert_unit, sigma, star_transform};
use recipcas::valuation::{beta, theta};
use recipcas::{value, Polynomial, RationalFunction, RecipSum, ValuationSpec, Value};

type Outcome = Result<String, String>;

struct Criterion {
    name: &'static str,
    tolerance: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { name: "involution suite", tolerance: "0 failures", limit: secs(10), run: involutions },
        Criterion { name: "non-UFD certificate", tolerance: "exact", limit: secs(1), run: non_ufd },
        Criterion { name: "theta value table", tolerance: "exact", limit: secs(5), run: theta_table },
        Criterion { name: "beta integrality", tolerance: "exact", limit: secs(10), run: beta_integrality },
        Criterion { name: "unit inversion", tolerance: "0 failures", limit: secs(60), run: unit_inversion },
        Criterion { name: "valuation laws", tolerance: "0 failures", limit: secs(30), run: valuation_laws },
        Criterion { name: "overring containments", tolerance: "0 failures", limit: secs(10), run: overring_containments },
        Criterion { name: "udiv oracle equivalence", tolerance: "0 disagreements", limit: secs(20), run: udiv },
        Criterion { name: "prime separation matrix", tolerance: "exact", limit: secs(5), run: prime_separation },
        Criterion { name: "non-fc ingredients", tolerance: "exact", limit: secs(2), run: non_fc },
        Criterion { name: "overring growth", tolerance: "exact", limit: secs(5), run: overring_growth },
        Criterion { name: "Egyptian obstruction", tolerance: "0 failures", limit: secs(30), run: egyptian },
        Criterion { name: "length oracle", tolerance: "exact", limit: secs(60), run: length_oracle },
        Criterion { name: "CLI black-box", tolerance: "exact", limit: secs(10), run: cli_black_box },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if took <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} {:<24} tol={:<16} limit={:>3}s took={:>7.3}s  {}",
            if ok { "PASS" } else { "FAIL" },
            c.name,
            c.tolerance,
            c.limit.as_secs(),
            took.as_secs_f64(),
            detail
        );
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(rep: &CertificateReport) -> Result<(), String> {
    require(rep.passed, || format!("{} failed: {:?}", rep.name, rep.failures))
}

fn witness<'a>(rep: &'a CertificateReport, label: &str) -> &'a str {
    rep.witnesses
        .iter()
        .find(|w| w.label == label)
        .map(|w| w.value.as_str())
        .unwrap_or("")
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, degree: u32, height: i64, nonconstant: bool) -> Polynomial {
    loop {
        let terms = rng.gen_range(1..=6);
        let mut f = Polynomial::zero(n);
        for _ in 0..terms {
            let d = rng.gen_range(0..=degree);
            let mut e = vec![0u32; n];
            for _ in 0..d {
                e[rng.gen_range(0..n)] += 1;
            }
            let c = rng.gen_range(-height..=height);
            f = &f + &Polynomial::power_product(&e).scale(&rat(c));
        }
        if !f.is_zero() && !(nonconstant && f.is_constant()) {
            return f;
        }
    }
}

fn random_fraction(rng: &mut ChaCha8Rng, n: usize) -> RationalFunction {
    let num = random_poly(rng, n, 3, 9, false);
    let den = random_poly(rng, n, 3, 9, false);
    RationalFunction::new(num, den).expect("nonzero denominator")
}

fn involutions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut count = 0;
    for n in [2, 3] {
        for _ in 0..300 {
            let f = random_poly(&mut rng, n, 6, 20, false);
            let r = RationalFunction::from_poly(f.clone());
            require(sigma(&sigma(&r)) == r, || format!("sigma(sigma(f)) != f for {f}"))?;
            let s = star_transform(&f).map_err(|e| e.to_string())?;
            let ss = star_transform(&s.fstar).map_err(|e| e.to_string())?;
            require(ss.fstar.shift(&s.t) == f, || format!("X^t (f*)* != f for {f}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} polynomials"))
}

fn non_ufd() -> Outcome {
    let rep = check_non_ufd();
    passed(&rep)?;
    // independent numeric oracle: s = xy/(x+y), t = x^2/(x+y), u = y^2/(x+y)
    for (x, y) in [(3, 5), (-2, 7), (11, 4)] {
        let (x, y) = (rat(x), rat(y));
        let s = &x * &y / (&x + &y);
        let t = &x - &s;
        let u = &y - &s;
        require(&s * &s == &t * &u, || "numeric s^2 != t*u".into())?;
    }
    let values: Vec<&str> = ["v(s)", "v(t)", "v(u)"].iter().map(|l| witness(&rep, l)).collect();
    require(values == ["1", "1", "1"], || format!("order values {values:?}"))?;
    Ok(format!("s^2 = t*u = {}, order values (1,1,1)", witness(&rep, "s^2 = t*u")))
}

fn theta_table() -> Outcome {
    let mut rows = 0;
    for q in 2..=7u32 {
        for p in 1..q {
            if gcd_u32(p, q) != 1 {
                continue;
            }
            for h in [1, p * q, p * q + 1] {
                let rep = check_theta_values(p, q, h).map_err(|e| e.to_string())?;
                passed(&rep)?;
                let (vb, vt) = ((h + p * q - 1).to_string(), (p * q + 1 - h).to_string());
                require(witness(&rep, "v(X^q-Y^p)") == vb && witness(&rep, "v(theta)") == vt, || {
                    format!("({p},{q},{h}) reported {:?}", rep.witnesses)
                })?;
                rows += 1;
            }
        }
    }
    Ok(format!("{rows} (p,q,h) triples"))
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

fn beta_integrality() -> Outcome {
    for (p, q) in [(2u32, 3u32), (3, 4), (2, 5), (3, 5), (4, 5)] {
        passed(&check_beta_integrality(p, q).map_err(|e| e.to_string())?)?;
        // numeric oracle at rational points: beta^p = t^d (t + x^q)^(p-d) x with
        // t = x^q y^p / (x^q - y^p)
        let (b, _, d) = beta(p, q).map_err(|e| e.to_string())?;
        for (x, y) in [(rat(2), rat(3)), (rat(5), Rational::new(1.into(), 2.into()))] {
            let xq = pow(&x, q);
            let t = &xq * pow(&y, p) / (&xq - pow(&y, p));
            let rhs = pow(&t, d) * pow(&(&t + &xq), p - d) * &x;
            let lhs = pow(&b.evaluate(&[x.clone(), y.clone()]).ok_or("pole")?, p);
            require(lhs == rhs, || format!("numeric identity fails for ({p},{q})"))?;
        }
        let v = value(&ValuationSpec::weighted(p, q, p * q + 1), &b).map_err(|e| e.to_string())?;
        require(v == Value::int(1), || format!("v(beta) = {v} for ({p},{q})"))?;
    }
    Ok("5 pairs".into())
}

fn pow(x: &Rational, k: u32) -> Rational {
    (0..k).fold(rat(1), |acc, _| acc * x)
}

fn unit_inversion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut max_terms = 0;
    let mut four = 0;
    for i in 0..100 {
        let n = if i % 2 == 0 { 2 } else { 3 };
        let k = i % 5;
        let c = loop {
            let c = rng.gen_range(-4..=4);
            if c != 0 {
                break c;
            }
        };
        let mut denoms = vec![Polynomial::from_int(n, c)];
        for _ in 0..k {
            let d = rng.gen_range(1..=3);
            denoms.push(random_poly(&mut rng, n, d, 5, true));
        }
        let alpha = RecipSum::new(n, denoms).map_err(|e| e.to_string())?;
        let inv = invert_unit(&alpha).map_err(|e| format!("{alpha}: {e}"))?;
        let product = &alpha.normalize() * &inv.normalize();
        require(product.is_one(), || format!("{alpha}: product {product}"))?;
        max_terms = max_terms.max(inv.len());
        four += (k == 4) as usize;
    }
    Ok(format!("100 units ({four} with 4 nonconstant terms), largest inverse {max_terms} terms"))
}

fn valuation_laws() -> Outcome {
    let specs2 = [
        ValuationSpec::xadic(1),
        ValuationSpec::Order,
        ValuationSpec::weighted(2, 3, 7),
        ValuationSpec::gauss(ValuationSpec::xadic(1), 2),
        ValuationSpec::lex(ValuationSpec::xadic(1), 2),
    ];
    let specs3 = [
        ValuationSpec::xadic(3),
        ValuationSpec::Order,
        ValuationSpec::gauss(ValuationSpec::weighted(1, 2, 2), 3),
        ValuationSpec::gauss(ValuationSpec::gauss(ValuationSpec::xadic(1), 2), 3),
        ValuationSpec::lex(ValuationSpec::weighted(2, 3, 5), 1),
        ValuationSpec::lex(ValuationSpec::lex(ValuationSpec::Order, 2), 3),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checks = 0;
    for (n, specs) in [(2, &specs2[..]), (3, &specs3[..])] {
        for _ in 0..300 {
            let a = random_fraction(&mut rng, n);
            let b = random_fraction(&mut rng, n);
            let sum = &a + &b;
            let prod = &a * &b;
            for spec in specs {
                let v = |r: &RationalFunction| value(spec, r).map_err(|e| e.to_string());
                let (va, vb) = (v(&a)?, v(&b)?);
                require(v(&prod)? == &va + &vb, || format!("{spec}: v(ab) != v(a)+v(b) for {a}, {b}"))?;
                require(v(&sum)? >= va.clone().min(vb.clone()), || format!("{spec}: ultrametric fails for {a}, {b}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} pair checks over 11 specs"))
}

fn overring_containments() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for i in 0..500 {
        let n = 2 + i % 2;
        let f = random_poly(&mut rng, n, 4, 9, true);
        let s = sigma(&RationalFunction::reciprocal_of(&f).map_err(|e| e.to_string())?);
        for j in 1..=n {
            let v = value(&ValuationSpec::xadic(j), &s).map_err(|e| e.to_string())?;
            require(v >= Value::int(0), || format!("xadic:{j} of sigma(1/({f})) = {v}"))?;
        }
        let v = value(&ValuationSpec::Order, &s).map_err(|e| e.to_string())?;
        require(v >= Value::int(1), || format!("order of sigma(1/({f})) = {v}"))?;
    }
    Ok("500 polynomials".into())
}

fn udiv() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let mut divisible = 0;
    for i in 0..210 {
        let (p, q) = [(1u32, 2u32), (2, 3), (3, 4)][i % 3];
        let g = if i % 2 == 0 {
            let cofactor = random_poly(&mut rng, 2, 3, 9, false);
            &(&x.pow(q) - &y.pow(p)) * &cofactor
        } else {
            random_poly(&mut rng, 2, 5, 9, false)
        };
        let rep = check_udiv_equivalence(p, q, &g).map_err(|e| e.to_string())?;
        passed(&rep)?;
        if witness(&rep, "divisible") == "true" {
            divisible += 1;
        }
        if i % 2 == 0 {
            require(witness(&rep, "divisible") == "true", || format!("explicit multiple {g} not divisible"))?;
        }
    }
    Ok(format!("210 polynomials, {divisible} divisible"))
}

fn prime_separation() -> Outcome {
    let pairs = [(1u32, 2u32), (2, 3), (3, 4), (2, 5), (3, 5)];
    let rep = check_prime_separation(&pairs).map_err(|e| e.to_string())?;
    passed(&rep)?;
    for &(p, q) in &pairs {
        let expected: Vec<String> = pairs
            .iter()
            .map(|&(r, s)| if (p, q) == (r, s) { 0 } else { (q * r).max(p * s) }.to_string())
            .collect();
        let row = witness(&rep, &format!("row ({p},{q})"));
        require(row == expected.join(" "), || format!("row ({p},{q}) = {row}"))?;
    }
    Ok("5x5 matrix".into())
}

fn non_fc() -> Outcome {
    for q in 2..=7 {
        passed(&check_finite_conductor_witness(q).map_err(|e| e.to_string())?)?;
        // numeric oracle: Y t = X^q (t + Y) for t = X^q Y / (Y - X^q)
        let t = theta(1, q).map_err(|e| e.to_string())?;
        let (x, y) = (rat(3), rat(-2));
        let tv = t.evaluate(&[x.clone(), y.clone()]).ok_or("pole")?;
        require(&y * &tv == pow(&x, q) * (&tv + &y), || format!("numeric identity fails for q = {q}"))?;
    }
    Ok("q = 2..7".into())
}

fn overring_growth() -> Outcome {
    let pairs = [(2u32, 3u32), (2, 5), (2, 7), (3, 4), (3, 5), (3, 7), (3, 8)];
    let rep = check_overring_growth(4, &pairs).map_err(|e| e.to_string())?;
    passed(&rep)?;
    let v = ValuationSpec::weighted(4, 5, 21);
    let val = |p, q| -> Result<Value, String> {
        let b = beta(p, q).map_err(|e| e.to_string())?.0;
        value(&v, &b).map_err(|e| e.to_string())
    };
    for &(p, q) in &pairs {
        let x = val(p, q)?;
        require(x >= Value::int(9), || format!("v(beta_{{{p},{q}}}) = {x}"))?;
    }
    require(val(4, 5)? == Value::int(1), || "v(beta_{4,5}) != 1".into())?;
    Ok(format!("{} pairs, all >= 9, v(beta_4,5) = 1", pairs.len()))
}

fn egyptian() -> Outcome {
    let rep = check_egyptian_obstruction(500, 42).map_err(|e| e.to_string())?;
    passed(&rep)?;
    Ok("500 sums, seed 42".into())
}

fn length_oracle() -> Outcome {
    let r = |t: &str| parse_expression(t, 2).map(|v| v.to_rational()).map_err(|e| e.to_string());
    let two = brute_force_length(&r("(X+Y)/(X*Y)")?, 2, 2, 3).length();
    require(two == Some(2), || format!("(X+Y)/(X*Y): {two:?}"))?;
    let one = brute_force_length(&r("1/X")?, 2, 2, 3).length();
    require(one == Some(1), || format!("1/X: {one:?}"))?;
    Ok("lengths 2 and 1".into())
}

fn run_bin(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_recipcas"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn cli_black_box() -> Outcome {
    let (code, out) = run_bin(&["val", "order", "sigma(1/(X+Y))"])?;
    require(code == 0 && out == "1\n", || format!("val: {code} {out:?}"))?;
    let (code, out) = run_bin(&["check", "beta_integrality", "2", "3", "--json"])?;
    let doc: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    require(code == 0 && doc["passed"] == true, || format!("check: {code} {out}"))?;
    let (code, out) = run_bin(&["eval", "recip(X)+recip(Y)"])?;
    require(code == 0 && out == "(X+Y)/(X*Y)\n", || format!("eval: {code} {out:?}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for i in 0..200 {
        let n = 2 + i % 2;
        let (text, ok) = match i % 3 {
            0 => {
                let f = random_poly(&mut rng, n, 4, 20, false);
                let t = f.to_string();
                let ok = matches!(parse_expression(&t, n), Ok(Parsed::Poly(g)) if g == f);
                (t, ok)
            }
            1 => {
                let a = random_fraction(&mut rng, n);
                let t = a.to_string();
                let ok = parse_expression(&t, n).map(|v| v.to_rational()) == Ok(a);
                (t, ok)
            }
            _ => {
                let ds: Vec<Polynomial> = (0..3).map(|_| random_poly(&mut rng, n, 2, 9, false)).collect();
                let alpha = RecipSum::new(n, ds).map_err(|e| e.to_string())?;
                let t = alpha.to_string();
                let ok = matches!(parse_expression(&t, n), Ok(Parsed::Recip(b)) if b == alpha);
                (t, ok)
            }
        };
        require(ok, || format!("round trip failed for {text}"))?;
    }
    Ok("3 commands, 200 round trips".into())
}
