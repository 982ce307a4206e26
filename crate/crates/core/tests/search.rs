use betaexp::branching::default_depth;
use betaexp::constants::NamedConstant;
use betaexp::exactnum::rat;
use betaexp::expansions::{Base, SpecialPoint};
use betaexp::search::{b_aleph0_in, emit_tables, enumerate_candidates, Agreement, Step, TableRow};
use betaexp::symbolic::Window;
use betaexp::Error;

/// Float value of a special point by summing its expansion.
fn special_f64(p: SpecialPoint, q: f64) -> f64 {
    let digits: Vec<u8> = match p {
        SpecialPoint::InvQ => return 1.0 / q,
        SpecialPoint::SRight => return 1.0 / (q * q - q),
        SpecialPoint::Y(j) => {
            std::iter::once(0).chain(std::iter::repeat_n(1, j)).chain([1, 0].into_iter().cycle()).take(400).collect()
        }
        SpecialPoint::Z(j) => {
            std::iter::once(1).chain(std::iter::repeat_n(0, j)).chain([0, 1].into_iter().cycle()).take(400).collect()
        }
    };
    digits.iter().enumerate().map(|(i, &d)| f64::from(d) * q.powi(-(i as i32 + 1))).sum()
}

fn step_residual(s: &Step, q: f64) -> f64 {
    let x = s.word.iter().fold(special_f64(s.from, q), |x, &d| q * x - f64::from(d));
    x - special_f64(s.to, q)
}

/// The first equation changes sign across the recomputed root.
fn float_root_ok(r: &TableRow) -> bool {
    let q = r.root.to_f64();
    let s = &r.equation.steps[0];
    let (a, b) = (step_residual(s, q - 1e-7), step_residual(s, q + 1e-7));
    a * b < 0.0 && r.equation.steps.iter().all(|s| step_residual(s, q).abs() < 1e-6)
}

fn within_printed(r: &TableRow) -> bool {
    let printed = r.printed_decimal.as_deref().unwrap();
    let places = printed.split('.').nth(1).unwrap().len() as i32;
    let p: f64 = printed.parse().unwrap();
    (r.root.to_f64() - p).abs() <= 0.5 * 10f64.powi(-places) + 1e-12
}

#[test]
fn second_table_matches() {
    let rows = emit_tables(2).unwrap();
    assert_eq!(rows.len(), 11);
    for r in &rows {
        assert_eq!(r.agreement, Some(Agreement::Match), "{}", r.equation);
        assert!(r.verified && float_root_ok(r) && within_printed(r), "{}", r.equation);
    }
}

#[test]
fn third_table_matches_but_one_polynomial() {
    let rows = emit_tables(3).unwrap();
    assert_eq!(rows.len(), 15);
    for r in &rows {
        let expected = if r.printed_decimal.as_deref() == Some("1.6663") {
            Agreement::PolynomialMismatch
        } else {
            Agreement::Match
        };
        assert_eq!(r.agreement, Some(expected), "{}", r.equation);
        assert!(r.verified && float_root_ok(r) && within_printed(r), "{}", r.equation);
    }
}

#[test]
fn first_table_decimals_match() {
    let rows = emit_tables(1).unwrap();
    assert_eq!(rows.len(), 8);
    for r in &rows {
        assert_ne!(r.agreement, Some(Agreement::DecimalMismatch), "{}", r.equation);
        assert!(r.verified && float_root_ok(r) && within_printed(r), "{}", r.equation);
    }
}

#[test]
fn every_row_holds_exactly_at_its_root() {
    for which in 1..=3 {
        for r in emit_tables(which).unwrap() {
            let base = Base::new(r.root.clone()).unwrap();
            assert!(r.equation.holds_at(&base).unwrap(), "{}", r.equation);
        }
    }
}

fn window(lo: NamedConstant, hi: NamedConstant) -> Window {
    Window { lo: lo.value(), hi: hi.value(), lo_closed: false, hi_closed: true }
}

fn hit_names(w: &Window) -> Vec<NamedConstant> {
    b_aleph0_in(w, default_depth()).unwrap().hits.iter().map(|h| h.named.expect("hits are named")).collect()
}

#[test]
fn search_windows() {
    use NamedConstant::*;
    assert_eq!(hit_names(&window(Golden, Q1)), vec![Q1]);
    assert_eq!(hit_names(&window(Q1, Q3)), vec![Q2, Q3]);
    assert_eq!(hit_names(&window(Golden, Q3)), vec![Q1, Q2, Q3]);
    assert!(hit_names(&Window::rational(&rat(162, 100), &rat(164, 100))).is_empty());
    let below = Window::rational(&rat(3, 2), &rat(17, 10));
    assert!(matches!(b_aleph0_in(&below, 8), Err(Error::UnsupportedWindow(_))));
    let above = Window::rational(&rat(165, 100), &rat(176, 100));
    assert!(matches!(b_aleph0_in(&above, 8), Err(Error::UnsupportedWindow(_))));
}

#[test]
fn hits_carry_valid_certificates_and_rejections_two_sided_witnesses() {
    use NamedConstant::*;
    let report = b_aleph0_in(&window(Golden, Q3), default_depth()).unwrap();
    for h in &report.hits {
        assert!(h.check.valid && h.named_divides, "{}", h.decimal);
    }
    let rejected: Vec<&str> = report.rejected.iter().map(|r| r.decimal.as_str()).collect();
    assert_eq!(rejected, ["1.65963", "1.66630", "1.67365", "1.67602"]);
    for r in &report.rejected {
        assert!(r.seeds.iter().all(|s| s.witness != "Cycle" && s.witness != "DepthExceeded"), "{}", r.decimal);
        assert!(r.seeds.iter().any(|s| s.witness == "TwoSided"), "{}", r.decimal);
    }
}

#[test]
fn candidates_are_mirror_consistent_with_bounded_y2_escape() {
    use NamedConstant::*;
    let set = enumerate_candidates(&window(Golden, Q3)).unwrap();
    assert!(set.mirror_consistent);
    assert!(!set.candidates.is_empty());
    let y2 = set.k_ranges.iter().find(|k| k.pattern == "T0^2(T1(y2))").unwrap();
    assert_eq!(y2.feasible, vec![4]);
    assert_eq!(y2.bound, Some(8));
    assert!(!y2.limit_feasible);
    let y3 = set.k_ranges.iter().find(|k| k.pattern == "T0(T1(y3))").unwrap();
    assert_eq!(y3.bound, None);
}
