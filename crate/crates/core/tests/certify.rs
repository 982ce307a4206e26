use std::cmp::Ordering;

use betaexp::branching::feasible_prefixes;
use betaexp::certify::{
    assemble_with, conjugate_exclusion, finite_sum, sigma_q3_family, verify_conjugate_exclusion,
    verify_sigma_q3_structure, AssembleOptions, Extremum, SeriesBound, Status,
};
use betaexp::constants::NamedConstant;
use betaexp::exactnum::{IntPolynomial, QField};
use betaexp::expansions::{parse_digits, PointSpec};
use proptest::prelude::*;

fn horner(desc: &[i64], x: f64) -> f64 {
    desc.iter().fold(0.0, |acc, &c| acc * x + c as f64)
}

/// Negative real root by bisection on a bracket with a sign change.
fn bisect(desc: &[i64], mut lo: f64, mut hi: f64) -> f64 {
    assert!(horner(desc, lo) * horner(desc, hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if horner(desc, lo) * horner(desc, mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn fact<'a>(facts: &'a [(String, String)], key: &str) -> &'a str {
    &facts.iter().find(|(k, _)| k == key).unwrap_or_else(|| panic!("missing {key}")).1
}

#[test]
fn exclusion_certified_with_float_conjugates() {
    let v = verify_conjugate_exclusion();
    assert_eq!(v.status, Status::Certified, "{:?}", v.first_failure());
    for (c, key) in [(NamedConstant::Q1, "q1_conjugate"), (NamedConstant::Q2, "q2_conjugate")] {
        let b = bisect(c.descending_coeffs(), -1.4, -1.1);
        assert_eq!(fact(&v.facts, key), format!("{b:.5}"));
    }
    assert_eq!(fact(&v.facts, "q1_prefix"), "1100000");
    assert_eq!(fact(&v.facts, "q2_prefix"), "110000");
}

/// sup and inf of `sum d_i b^(-n-i)` over digit choices, by choosing each
/// digit by the sign of its term.
fn float_extrema(b: f64, n: usize) -> (f64, f64) {
    let (mut sup, mut inf) = (0.0, 0.0);
    for i in 1..3000 {
        let t = b.powi(-((n + i) as i32));
        if t > 0.0 {
            sup += t;
        } else {
            inf += t;
        }
    }
    (sup, inf)
}

#[test]
fn series_bounds_match_float_extrema() {
    let (b, _) = NamedConstant::Q1.conjugate().unwrap();
    let bf = b.to_f64();
    let field = QField::new(b);
    for n in 0..12 {
        let sup = SeriesBound::new(&field, n, Extremum::Sup).unwrap().value;
        let inf = SeriesBound::new(&field, n, Extremum::Inf).unwrap().value;
        let (fs, fi) = float_extrema(bf, n);
        let val = |x: &betaexp::exactnum::QFieldElement| x.refine_to_digits(12).parse::<f64>().unwrap();
        assert!((val(&sup) - fs).abs() < 1e-9, "sup at {n}");
        assert!((val(&inf) - fi).abs() < 1e-9, "inf at {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn finite_sums_lie_between_bounds(word in prop::collection::vec(0u8..=1, 1..40), n in 0usize..10, which in 0usize..2) {
        let c = [NamedConstant::Q1, NamedConstant::Q2][which];
        let (b, _) = c.conjugate().unwrap();
        let field = QField::new(b);
        let s = finite_sum(&field, n, &word).unwrap();
        let sup = SeriesBound::new(&field, n, Extremum::Sup).unwrap().value;
        let inf = SeriesBound::new(&field, n, Extremum::Inf).unwrap().value;
        prop_assert!(s.cmp_element(&sup).unwrap() != Ordering::Greater);
        prop_assert!(s.cmp_element(&inf).unwrap() != Ordering::Less);
    }
}

#[test]
fn exclusion_survives_every_extension_of_the_prefix() {
    let c = NamedConstant::Q1;
    let (_, w) = c.conjugate().unwrap();
    let base = parse_digits("1100000").unwrap();
    for extra in 1..=4 {
        for bits in 0..(1u32 << extra) {
            let mut p = base.clone();
            p.extend((0..extra).map(|i| ((bits >> i) & 1) as u8));
            let v = conjugate_exclusion(&c.polynomial(), (&w.0, &w.1), &p).unwrap();
            assert!(v.is_certified(), "{p:?}");
        }
    }
}

#[test]
fn corrupted_q3_polynomial_fails_structure() {
    let opts = AssembleOptions {
        q3_polynomial: IntPolynomial::from_descending(&[1, -1, -1, 0, -2, 1]),
        sigma_k: 50,
        ..AssembleOptions::default()
    };
    let v = assemble_with(&opts);
    let sigma = v.iter().find(|v| v.id == "4.1").unwrap();
    assert_eq!(sigma.status, Status::Failed);
    assert!(sigma.first_failure().unwrap().check.starts_with("(a) k=0"));
    assert_eq!(v.iter().find(|v| v.id == "1.1").unwrap().status, Status::Failed);
}

#[test]
fn structure_certified_at_every_smaller_k() {
    for k in [10, 20, 50] {
        let v = verify_sigma_q3_structure(k);
        assert_eq!(v.status, Status::Certified, "K = {k}: {:?}", v.first_failure());
    }
}

#[test]
fn prefix_counts_follow_the_family() {
    let base = NamedConstant::Q3.base();
    let one = PointSpec::one(base);
    for n in 4..=48 {
        let got = feasible_prefixes(&one, base, n).unwrap();
        // the periodic word plus one word per k with 1 + 4k < n
        assert_eq!(got.len(), 1 + (n - 1).div_ceil(4), "n = {n}");
        assert_eq!(got, sigma_q3_family(n), "n = {n}");
    }
}
