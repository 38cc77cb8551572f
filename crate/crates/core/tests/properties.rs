use proptest::prelude::*;

use recipcas::cli::{parse_expression, Parsed};
use recipcas::kernel::rat;
use recipcas::recip::{invert_unit, sigma, star_transform};
use recipcas::{gcd, value, Polynomial, RationalFunction, RecipSum, ValuationSpec, Value};

fn poly(n: usize, max_deg: u32, max_terms: usize, height: i64) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, n), -height..=height),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        Polynomial::from_terms(
            n,
            terms.into_iter().map(|(e, c)| (e, rat(c))),
        )
    })
}

fn nonzero(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    poly(n, max_deg, max_terms, 6).prop_filter("nonzero", |f| !f.is_zero())
}

fn nonconstant(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    poly(n, max_deg, max_terms, 6).prop_filter("nonconstant", |f| !f.is_constant())
}

fn fraction(n: usize) -> impl Strategy<Value = RationalFunction> {
    (poly(n, 2, 3, 6), nonzero(n, 2, 3)).prop_map(|(a, b)| RationalFunction::new(a, b).unwrap())
}

fn specs2() -> Vec<ValuationSpec> {
    vec![
        ValuationSpec::xadic(1),
        ValuationSpec::xadic(2),
        ValuationSpec::Order,
        ValuationSpec::weighted(2, 3, 7),
        ValuationSpec::weighted(1, 2, 1),
        ValuationSpec::gauss(ValuationSpec::xadic(1), 2),
        ValuationSpec::lex(ValuationSpec::xadic(2), 1),
        ValuationSpec::lex(ValuationSpec::Order, 2),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(f in poly(2, 3, 4, 9), g in poly(2, 3, 4, 9), h in poly(2, 3, 4, 9)) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&(&f - &g) + &g - f.clone()).is_zero());
    }

    #[test]
    fn exact_division_inverts_products(f in poly(3, 2, 3, 9), g in nonzero(3, 2, 3)) {
        let prod = &f * &g;
        prop_assert_eq!(prod.div_exact(&g), Some(f));
    }

    #[test]
    fn gcd_divides_and_recovers_common_factors(
        f in nonzero(2, 2, 3), g in nonzero(2, 2, 3), h in nonzero(2, 2, 3)
    ) {
        let a = &f * &h;
        let b = &g * &h;
        let d = gcd(&a, &b);
        prop_assert!(d.divides(&a));
        prop_assert!(d.divides(&b));
        prop_assert!(h.divides(&d));
    }

    #[test]
    fn fractions_are_canonical(r in fraction(2), h in nonzero(2, 1, 2)) {
        let scaled = RationalFunction::new(r.num() * &h, r.den() * &h).unwrap();
        prop_assert_eq!(&scaled, &r);
        prop_assert!(gcd(r.num(), r.den()).is_one() || r.is_zero());
    }

    #[test]
    fn field_laws(a in fraction(2), b in fraction(2), c in fraction(2)) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
        }
    }

    #[test]
    fn sigma_is_an_involutive_automorphism(a in fraction(3), b in fraction(3)) {
        prop_assert_eq!(sigma(&sigma(&a)), a.clone());
        prop_assert_eq!(sigma(&(&a * &b)), &sigma(&a) * &sigma(&b));
        prop_assert_eq!(sigma(&(&a + &b)), &sigma(&a) + &sigma(&b));
    }

    #[test]
    fn star_is_bidual(f in nonzero(3, 4, 4)) {
        let s = star_transform(&f).unwrap();
        let ss = star_transform(&s.fstar).unwrap();
        prop_assert_eq!(ss.fstar.shift(&s.t), f.clone());
        prop_assert_eq!(s.a.clone(), ss.a.clone());
        prop_assert_eq!(s.quotient(), sigma(&RationalFunction::reciprocal_of(&f).unwrap()));
    }

    #[test]
    fn normalization_matches_pairwise_sums(ds in prop::collection::vec(nonzero(2, 2, 3), 1..5)) {
        let alpha = RecipSum::new(2, ds.clone()).unwrap();
        let mut expected = RationalFunction::zero(2);
        for d in &ds {
            expected = &expected + &RationalFunction::reciprocal_of(d).unwrap();
        }
        prop_assert_eq!(alpha.normalize(), expected.clone());
        let sq = alpha.mul(&alpha).unwrap();
        prop_assert_eq!(sq.normalize(), &expected * &expected);
    }

    #[test]
    fn small_units_invert(c in 1i64..5, ds in prop::collection::vec(nonconstant(2, 2, 3), 0..4)) {
        let mut denoms = vec![Polynomial::from_int(2, c)];
        denoms.extend(ds);
        let alpha = RecipSum::new(2, denoms).unwrap();
        let inv = invert_unit(&alpha).unwrap();
        prop_assert!((&alpha.normalize() * &inv.normalize()).is_one());
    }

    #[test]
    fn printed_values_parse_back(a in fraction(2), f in poly(3, 3, 4, 30), ds in prop::collection::vec(nonzero(2, 2, 3), 1..4)) {
        let back = parse_expression(&a.to_string(), 2).unwrap().to_rational();
        prop_assert_eq!(back, a);
        match parse_expression(&f.to_string(), 3).unwrap() {
            Parsed::Poly(g) => prop_assert_eq!(g, f),
            other => prop_assert!(false, "parsed as {:?}", other),
        }
        let alpha = RecipSum::new(2, ds).unwrap();
        match parse_expression(&alpha.to_string(), 2).unwrap() {
            Parsed::Recip(beta) => prop_assert_eq!(beta, alpha),
            other => prop_assert!(false, "parsed as {:?}", other),
        }
    }

    #[test]
    fn valuation_laws(a in fraction(2), b in fraction(2)) {
        for spec in specs2() {
            let va = value(&spec, &a).unwrap();
            let vb = value(&spec, &b).unwrap();
            prop_assert_eq!(value(&spec, &(&a * &b)).unwrap(), &va + &vb, "{}", spec);
            let vs = value(&spec, &(&a + &b)).unwrap();
            prop_assert!(vs >= va.clone().min(vb.clone()), "{}: {} {} {}", spec, vs, va, vb);
        }
    }

    #[test]
    fn overring_values(f in nonconstant(3, 3, 4)) {
        let s = sigma(&RationalFunction::reciprocal_of(&f).unwrap());
        for i in 1..=3 {
            prop_assert!(value(&ValuationSpec::xadic(i), &s).unwrap() >= Value::int(0));
        }
        prop_assert!(value(&ValuationSpec::Order, &s).unwrap() >= Value::int(1));
    }
}
