use std::cmp::Ordering;
use std::collections::BTreeSet;

use betaexp::constants::NamedConstant;
use betaexp::exactnum::{
    count_roots_closed, isolate_real_roots, parse_rational, rat, AlgebraicReal, IntPolynomial, QFieldElement, Rational,
};
use proptest::prelude::*;

fn poly_from_roots(roots: &[(i64, i64)], extra_quadratic: bool) -> IntPolynomial {
    let mut p = IntPolynomial::one();
    for &(n, d) in roots {
        p = &p * &IntPolynomial::from_i64s(&[-n, d]);
    }
    if extra_quadratic {
        p = &p * &IntPolynomial::from_i64s(&[1, 0, 1]);
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn sturm_count_equals_isolated_roots(
        coeffs in prop::collection::vec(-9i64..=9, 2..=9),
        a in -48i64..48,
        w in 1i64..64,
    ) {
        let p = IntPolynomial::from_i64s(&coeffs);
        prop_assume!(!p.is_constant());
        let (lo, hi) = (rat(a, 8), rat(a + w, 8));
        let n = count_roots_closed(&p, &lo, &hi).unwrap();
        let roots = isolate_real_roots(&p, Some((&lo, &hi))).unwrap();
        prop_assert_eq!(n, roots.len());
        for r in &roots {
            prop_assert!(r.is_root_of(&p));
            prop_assert!(r.cmp_rational(&lo) != Ordering::Less && r.cmp_rational(&hi) != Ordering::Greater);
        }
        for pair in roots.windows(2) {
            prop_assert_eq!(pair[0].cmp_algebraic(&pair[1]), Ordering::Less);
        }
    }

    #[test]
    fn root_count_matches_constructed_roots(
        roots in prop::collection::vec((-20i64..20, 1i64..5), 1..6),
        quad in any::<bool>(),
        a in -30i64..30,
        w in 0i64..40,
    ) {
        let p = poly_from_roots(&roots, quad);
        let (lo, hi) = (rat(a, 4), rat(a + w, 4));
        let expected: BTreeSet<Rational> = roots
            .iter()
            .map(|&(n, d)| rat(n, d))
            .filter(|r| *r >= lo && *r <= hi)
            .collect();
        prop_assert_eq!(count_roots_closed(&p, &lo, &hi).unwrap(), expected.len());
        let found = isolate_real_roots(&p, Some((&lo, &hi))).unwrap();
        let exact: BTreeSet<Rational> = found.iter().map(|r| {
            r.refine_to_width(&rat(1, 1000));
            let (l, h) = r.interval();
            expected.iter().find(|e| **e >= l && **e <= h).cloned().expect("isolated root near a constructed root")
        }).collect();
        prop_assert_eq!(exact, expected);
    }

    #[test]
    fn field_identities(
        which in 0usize..3,
        xs in prop::collection::vec(-7i64..=7, 1..7),
        ys in prop::collection::vec(-7i64..=7, 1..7),
        d in 1i64..6,
    ) {
        let c = [NamedConstant::Q1, NamedConstant::Q2, NamedConstant::Q3][which];
        let f = c.base().field();
        let x = f.from_poly(&IntPolynomial::from_i64s(&xs)).scale(&rat(1, d));
        let y = f.from_poly(&IntPolynomial::from_i64s(&ys));
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&(&x * &y) - &(&y * &x), f.zero());
        if !x.is_zero() {
            let inv = x.inverse().unwrap();
            prop_assert_eq!(&x * &inv, f.one());
        }
    }

    #[test]
    fn comparison_is_a_total_order(
        which in 0usize..3,
        elems in prop::collection::vec(prop::collection::vec(-5i64..=5, 1..5), 3..7),
    ) {
        let c = [NamedConstant::Q1, NamedConstant::Q2, NamedConstant::Q3][which];
        let f = c.base().field();
        let xs: Vec<QFieldElement> = elems.iter().map(|e| f.from_poly(&IntPolynomial::from_i64s(e))).collect();
        for a in &xs {
            for b in &xs {
                let ab = a.cmp_element(b).unwrap();
                prop_assert_eq!(ab, b.cmp_element(a).unwrap().reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                for c in &xs {
                    if ab != Ordering::Greater && b.cmp_element(c).unwrap() != Ordering::Greater {
                        prop_assert!(a.cmp_element(c).unwrap() != Ordering::Greater);
                    }
                }
                // rounded decimals never contradict the exact order
                for digits in [0, 3, 8] {
                    let (da, db) = (parse_rational(&a.refine_to_digits(digits)).unwrap(), parse_rational(&b.refine_to_digits(digits)).unwrap());
                    if ab == Ordering::Less {
                        prop_assert!(da <= db);
                    }
                }
            }
        }
    }
}

#[test]
fn nested_refinement_halves_width() {
    for c in NamedConstant::ALL {
        let a = AlgebraicReal::new(&c.polynomial(), &rat(1, 1), &rat(2, 1)).unwrap();
        let w0 = a.width();
        let mut prev = a.interval();
        for k in 1..=40u32 {
            a.refine();
            let now = a.interval();
            assert!(now.0 >= prev.0 && now.1 <= prev.1, "{c}: intervals nest");
            let bound = &w0 / Rational::from_integer(num_bigint::BigInt::from(1u64) << k);
            assert!(a.width() <= bound, "{c}: width after {k} steps");
            prev = now;
        }
    }
}

#[test]
fn decimals_of_named_constants_match_float_roots() {
    // Independent oracle: f64 bisection on the same polynomials.
    for c in NamedConstant::ALL {
        let coeffs = c.descending_coeffs();
        let f = |x: f64| coeffs.iter().fold(0.0, |acc, &a| acc * x + a as f64);
        let (mut lo, mut hi) = (1.0f64, 2.0f64);
        let s = f(lo).signum();
        for _ in 0..200 {
            let m = (lo + hi) / 2.0;
            if f(m).signum() == s {
                lo = m;
            } else {
                hi = m;
            }
        }
        assert_eq!(c.value().refine_to_digits(5), format!("{lo:.5}"), "{c}");
    }
}
