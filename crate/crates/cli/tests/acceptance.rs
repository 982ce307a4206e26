//! One pass/fail line per acceptance criterion. Exits nonzero if any fail.

use std::collections::BTreeSet;
use std::process::Command;

use betaexp::branching::{branching_tree, cycle_certificate_check, feasible_prefixes, prefix_count_oracle, tree_paths};
use betaexp::certify::{
    assemble_with, main_window, verify_conjugate_exclusion, verify_sigma_q3_structure, AssembleOptions, Status,
};
use betaexp::constants::NamedConstant;
use betaexp::exactnum::{rat, IntPolynomial};
use betaexp::expansions::{
    digits_to_string, make_y, make_z, pi_value, region_of, t_apply, Base, EventuallyPeriodic, PointSpec, RegionTag,
    SpecialPoint,
};
use betaexp::search::{b_aleph0_in, special_rf, symbolic_orbit};
use betaexp::symbolic::{identity_check, RationalFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// Decimal places every reproduced constant must match exactly.
const DIGITS: &str = "5";
/// Float tolerance for re-verifying a cycle `b(w) = w` numerically.
const CYCLE_TOL: f64 = 1e-9;
/// Float tolerance for a printed polynomial to count as vanishing.
const VANISH_TOL: f64 = 1e-6;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn betaexp(args: &[&str]) -> (i32, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_betaexp")).args(args).output().expect("binary runs");
    (o.status.code().unwrap_or(-1), String::from_utf8(o.stdout).unwrap())
}

fn ascending(desc: &[i64]) -> String {
    desc.iter().rev().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn criterion_1() -> Outcome {
    use NamedConstant::*;
    let expected = [
        (Golden, "1.61803"),
        (Q1, "1.64541"),
        (Q2, "1.65462"),
        (Q3, "1.68042"),
        (QPrime, "1.66184"),
        (QDoublePrime, "1.67365"),
        (Q4, "1.69784"),
        (QCheck, "1.71064"),
        (QF, "1.75488"),
    ];
    let mut bad = Vec::new();
    for (c, want) in expected {
        let (rc, out) =
            betaexp(&["roots", "--poly", &ascending(c.descending_coeffs()), "--window", "1,2", "--digits", DIGITS]);
        if rc != 0 || out.trim() != want {
            bad.push(format!("{c}: got {:?}", out.trim()));
        }
    }
    let golden = format!("{:.5}", (1.0 + 5f64.sqrt()) / 2.0);
    if golden != "1.61803" {
        bad.push(format!("(1+sqrt 5)/2 = {golden}"));
    }
    for (c, window, want) in [(Q1, "-1.3,-1.1", "-1.20458"), (Q2, "-1.35,-1.2", "-1.26493")] {
        let (rc, out) =
            betaexp(&["roots", "--poly", &ascending(c.descending_coeffs()), "--window", window, "--digits", DIGITS]);
        if rc != 0 || out.trim() != want {
            bad.push(format!("{c} conjugate: got {:?}", out.trim()));
        }
    }
    if bad.is_empty() {
        outcome(true, "11 values match at 5 dp")
    } else {
        outcome(false, bad.join("; "))
    }
}

fn coeffs(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|c| c.as_i64().unwrap() as f64).collect()
}

fn eval_asc(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &k| acc * x + k)
}

/// Root of the recomputed polynomial near its 5 dp decimal.
fn refine_root(poly: &[f64], approx: f64) -> f64 {
    let (mut lo, mut hi) = (approx - 1e-5, approx + 1e-5);
    assert!(eval_asc(poly, lo) * eval_asc(poly, hi) <= 0.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if eval_asc(poly, lo) * eval_asc(poly, mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// A printed polynomial is internally inconsistent when it fails to vanish
/// at the root or has the spurious rational root 1 or -1.
fn printed_inconsistent(row: &Value) -> bool {
    let printed = coeffs(&row["printed_polynomial"]);
    let root = refine_root(&coeffs(&row["polynomial"]), row["root_5dp"].as_str().unwrap().parse().unwrap());
    eval_asc(&printed, root).abs() > VANISH_TOL || eval_asc(&printed, 1.0) == 0.0 || eval_asc(&printed, -1.0) == 0.0
}

fn table(which: &str) -> Vec<Value> {
    let (rc, out) = betaexp(&["tables", "--which", which, "--format", "json"]);
    assert_eq!(rc, 0);
    serde_json::from_str::<Value>(&out).unwrap().as_array().unwrap().clone()
}

fn criterion_2() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    let agreement = |r: &Value| r["agreement"].as_str().unwrap().to_string();
    let printed = |r: &Value| r["printed_root_5dp"].as_str().unwrap().to_string();

    let t1 = table("1");
    let required = ["1.65027", "1.63923", "1.65637", "1.64308", "1.63420", "1.65363", "1.66065"];
    let mut t1_bad = Vec::new();
    for want in required {
        let Some(r) = t1.iter().find(|r| printed(r) == want) else {
            t1_bad.push(format!("{want} missing"));
            continue;
        };
        // 1.65027 is compared against the recomputed polynomial only.
        let ok = if want == "1.65027" { r["root_5dp"] == r["printed_root_5dp"] } else { agreement(r) == "Match" };
        if !ok {
            t1_bad.push(format!("{want} {}", agreement(r)));
        }
    }
    if t1_bad.is_empty() {
        notes.push("table 1 ok".to_string());
    } else {
        pass = false;
        notes.push(format!("table 1 not Match: {}", t1_bad.join(", ")));
    }

    let t2 = table("2");
    let t2_match = t2.iter().filter(|r| agreement(r) == "Match").count();
    pass &= t2.len() == 11 && t2_match == 11;
    notes.push(format!("table 2 {t2_match}/{} Match", t2.len()));

    let t3 = table("3");
    let mut flagged = Vec::new();
    let mut t3_ok = true;
    for r in &t3 {
        if agreement(r) == "Match" {
            continue;
        }
        let reported = r["printed_polynomial"].is_array()
            && r["polynomial"].is_array()
            && r["root_5dp"].is_string()
            && r["printed_root_5dp"].is_string();
        t3_ok &= reported && printed_inconsistent(r);
        flagged.push(printed(r));
    }
    pass &= t3_ok && t3.len() == 15;
    notes.push(format!(
        "table 3 {}/{} Match, oracle-flagged [{}]{}",
        t3.len() - flagged.len(),
        t3.len(),
        flagged.join(", "),
        if t3_ok { "" } else { " NOT all inconsistent" }
    ));
    outcome(pass, notes.join("; "))
}

/// Float orbit of a point under a map word.
fn float_orbit(x: f64, q: f64, word: &[u8]) -> f64 {
    word.iter().fold(x, |x, &d| q * x - f64::from(d))
}

fn criterion_3() -> Outcome {
    use NamedConstant::*;
    use SpecialPoint::*;
    let report = match b_aleph0_in(&main_window(), betaexp::branching::default_depth()) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let expected: [(NamedConstant, &[SpecialPoint], &[&str]); 3] = [
        (Q1, &[Y(3), Z(3)], &["1001", "0110"]),
        (Q2, &[Y(1), Z(1)], &["10000111", "01111000"]),
        (Q3, &[Y(1)], &["1000"]),
    ];
    let mut bad = Vec::new();
    if report.hits.len() != 3 {
        bad.push(format!("{} bases", report.hits.len()));
    }
    for (h, (c, points, words)) in report.hits.iter().zip(expected) {
        let equal = h.q.cmp_algebraic(&c.value()).is_eq() && h.polynomial.pseudo_rem(&c.polynomial()).is_zero();
        let check = cycle_certificate_check(&h.witness.w, &h.witness.b, &h.base).map(|c| c.valid).unwrap_or(false);
        let q = h.q.to_f64();
        let w = h.witness.w.decimal(15).parse::<f64>().unwrap();
        let float_ok = (float_orbit(w, q, &h.witness.b) - w).abs() < CYCLE_TOL;
        let b = digits_to_string(&h.witness.b);
        let matches = h.w_special.is_some_and(|s| points.contains(&s)) && words.contains(&b.as_str());
        if !(equal && check && float_ok && matches) {
            bad.push(format!("{c}: equal {equal}, certificate {check}, float {float_ok}, cycle {b}"));
        }
    }
    let names: Vec<String> = report.hits.iter().map(|h| h.named.map_or(h.decimal.clone(), |c| c.to_string())).collect();
    outcome(
        bad.is_empty(),
        format!(
            "bases [{}]{}",
            names.join(", "),
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
        ),
    )
}

/// Distinct length-n truncations of `1(1000)^k 01(10)^inf` and `1(1000)^inf`.
fn family_count(n: usize) -> usize {
    let mut set = BTreeSet::new();
    for k in 0..=n {
        let w: String = std::iter::once("1".to_string())
            .chain(std::iter::repeat_n("1000".to_string(), k))
            .chain(std::iter::once("01".to_string()))
            .chain(std::iter::repeat_n("10".to_string(), n))
            .collect();
        set.insert(w[..n].to_string());
    }
    let periodic: String = std::iter::once("1".to_string()).chain(std::iter::repeat_n("1000".to_string(), n)).collect();
    set.insert(periodic[..n].to_string());
    set.len()
}

fn criterion_4() -> Outcome {
    let v = verify_sigma_q3_structure(50);
    let base = NamedConstant::Q3.base();
    let one = PointSpec::one(base);
    let mut bad = Vec::new();
    for n in (4..=48).step_by(4) {
        let got = feasible_prefixes(&one, base, n).map(|s| s.len()).unwrap_or(0);
        let want = family_count(n);
        if got != want {
            bad.push(format!("n={n}: {got} vs {want}"));
        }
    }
    let pass = v.status == Status::Certified && bad.is_empty();
    outcome(
        pass,
        format!(
            "K=50 {}; prefix counts 4..48 {}",
            v.status,
            if bad.is_empty() { "match".into() } else { bad.join(", ") }
        ),
    )
}

fn criterion_5() -> Outcome {
    let v = verify_conjugate_exclusion();
    let margins: Vec<&str> =
        v.evidence.iter().filter(|e| e.passed && !e.margin_5dp.is_empty()).map(|e| e.margin_5dp.as_str()).collect();
    let fact = |k: &str| v.facts.iter().find(|(f, _)| f == k).map(|(_, x)| x.clone()).unwrap_or_default();
    let opts = AssembleOptions {
        q3_polynomial: IntPolynomial::from_descending(&[1, -1, -1, 0, -2, 1]),
        ..AssembleOptions::default()
    };
    let control = assemble_with(&opts).into_iter().find(|v| v.id == "4.1").map(|v| v.status);
    let pass = v.status == Status::Certified
        && margins.len() == 2
        && fact("q1_prefix") == "1100000"
        && control == Some(Status::Failed);
    outcome(
        pass,
        format!(
            "{}; prefixes {} and {}; margins [{}]; negative control {}",
            v.status,
            fact("q1_prefix"),
            fact("q2_prefix"),
            margins.join(", "),
            control.map_or("missing".into(), |s| s.to_string())
        ),
    )
}

fn y_side(j: usize, m: usize) -> RationalFunction {
    let w: Vec<u8> = std::iter::once(1).chain(std::iter::repeat_n(0, m)).collect();
    symbolic_orbit(SpecialPoint::Y(j), &w)
}

fn z_side(j: usize, m: usize) -> RationalFunction {
    let w: Vec<u8> = std::iter::once(0).chain(std::iter::repeat_n(1, m)).collect();
    symbolic_orbit(SpecialPoint::Z(j), &w)
}

/// Reflection identities relating the y-side and z-side orbits: the two
/// sides are mirror images about the midpoint of J and of S.
fn identities() -> (usize, usize) {
    let rf =
        |n: &[i64], d: &[i64]| RationalFunction::new(IntPolynomial::from_i64s(n), IntPolynomial::from_i64s(d)).unwrap();
    let jl = rf(&[0, 1, 1], &[-1, 0, 0, 0, 1]);
    let jr = rf(&[1, 0, 0, 1], &[-1, 0, 0, 0, 1]);
    let sr = rf(&[1], &[0, -1, 1]);
    let iq = RationalFunction::monomial(-1);
    let (mut checked, mut failed) = (0, 0);
    let mut check = |a: &RationalFunction, b: &RationalFunction| {
        for ok in [
            identity_check(&(a - &jr), &(&jl - b)),
            identity_check(&(a - &jl), &(&jr - b)),
            identity_check(&(&sr - a), &(b - &iq)),
        ] {
            checked += 1;
            failed += usize::from(!ok);
        }
    };
    for j in 1..=20 {
        check(&special_rf(SpecialPoint::Y(j)), &special_rf(SpecialPoint::Z(j)));
        for m in 0..=20 {
            check(&y_side(j, m), &z_side(j, m));
        }
    }
    // y_j -> y_k after T1 T0^m has the same polynomial as z_j -> z_k after T0 T1^m.
    for j in 1..=20 {
        for k in 1..=20 {
            for m in 0..=20 {
                let a = &y_side(j, m) - &special_rf(SpecialPoint::Y(k));
                let b = &z_side(j, m) - &special_rf(SpecialPoint::Z(k));
                checked += 1;
                failed += usize::from(!identity_check(&a, &(-&b)));
            }
        }
    }
    (checked, failed)
}

fn shift_conjugacy(rng: &mut ChaCha8Rng) -> (usize, usize) {
    let mut failed = 0;
    let bases = [NamedConstant::Q1, NamedConstant::Q2, NamedConstant::Q3];
    for i in 0..100 {
        let b = bases[i % 3].base();
        let pre: Vec<u8> = (0..rng.gen_range(0..8)).map(|_| rng.gen_range(0..=1)).collect();
        let per: Vec<u8> = (0..rng.gen_range(1..6)).map(|_| rng.gen_range(0..=1)).collect();
        let w = EventuallyPeriodic::new(pre, per).unwrap();
        let x = PointSpec { value: pi_value(&w, b), provenance: w.pretty() };
        let ok = t_apply(&x, w.first_digit(), b).is_ok_and(|t| t.value == pi_value(&w.shift(), b));
        failed += usize::from(!ok);
    }
    (100, failed)
}

fn random_case(rng: &mut ChaCha8Rng) -> (Base, PointSpec) {
    use NamedConstant::*;
    let named = [Q1, Q2, Q3, QPrime, QDoublePrime, Q4, QCheck];
    let base = if rng.gen_bool(0.7) {
        named[rng.gen_range(0..named.len())].base().clone()
    } else {
        Base::from_rational(&rat(rng.gen_range(1625..1750), 1000)).unwrap()
    };
    let x = match rng.gen_range(0..4) {
        0 => PointSpec::one(&base),
        1 => make_y(rng.gen_range(1..6), &base),
        2 => make_z(rng.gen_range(1..6), &base),
        _ => {
            let pre: Vec<u8> = (0..rng.gen_range(0..5)).map(|_| rng.gen_range(0..=1)).collect();
            let per: Vec<u8> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(0..=1)).collect();
            let w = EventuallyPeriodic::new(pre, per).unwrap();
            PointSpec { value: pi_value(&w, &base), provenance: w.pretty() }
        }
    };
    (base, x)
}

/// Tree path counts against the brute-force prefix count.
fn oracle_equivalence(rng: &mut ChaCha8Rng) -> (usize, usize, usize) {
    let (mut compared, mut discrepancies, mut unresolved) = (0, 0, 0);
    for _ in 0..50 {
        let (base, x) = random_case(rng);
        let n = rng.gen_range(4..=20);
        let oracle = prefix_count_oracle(&x, &base, n).unwrap();
        let v = branching_tree(&x, &base, n).unwrap();
        match tree_paths(&v, n) {
            Some(paths) => {
                compared += 1;
                discrepancies += usize::from(paths.len() != oracle);
            }
            None => unresolved += 1,
        }
    }
    (compared, discrepancies, unresolved)
}

fn region_failures(b: &Base) -> usize {
    let mut failed = 0;
    for j in 1..=20 {
        let y = region_of(&make_y(j, b).value, b).map(|r| r.tag);
        let z = region_of(&make_z(j, b).value, b).map(|r| r.tag);
        let (wy, wz) = if j <= 3 { (RegionTag::J, RegionTag::J) } else { (RegionTag::SJR, RegionTag::SJL) };
        failed += usize::from(y != Ok(wy) || z != Ok(wz));
    }
    failed
}

fn trichotomy(rng: &mut ChaCha8Rng) -> (usize, usize) {
    let mut failed = 0;
    for _ in 0..20 {
        failed += region_failures(&Base::from_rational(&rat(rng.gen_range(1646..=1680), 1000)).unwrap());
    }
    let q1 = NamedConstant::Q1.base();
    failed += usize::from(make_y(3, q1).value != *q1.j_right());
    failed += usize::from(make_z(3, q1).value != *q1.j_left());
    for c in [NamedConstant::Q1, NamedConstant::Q3] {
        failed += region_failures(c.base());
    }
    (22 * 20 + 2, failed)
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (ic, ifail) = identities();
    let (sc, sfail) = shift_conjugacy(&mut rng);
    let (oc, odis, ounres) = oracle_equivalence(&mut rng);
    let (tc, tfail) = trichotomy(&mut rng);
    let pass = ifail == 0 && sfail == 0 && odis == 0 && ounres == 0 && tfail == 0;
    outcome(
        pass,
        format!(
            "identities {ifail}/{ic} failed; shift conjugacy {sfail}/{sc} failed; oracle {odis} discrepancies in {oc} ({ounres} unresolved); trichotomy {tfail}/{tc} failed"
        ),
    )
}

fn main() {
    let criteria: [Criterion; 6] = [
        ("constant reproduction", criterion_1),
        ("table reproduction", criterion_2),
        ("search result", criterion_3),
        ("q3 structure at K=50", criterion_4),
        ("conjugate exclusion", criterion_5),
        ("property suites", criterion_6),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        failed += usize::from(!o.pass);
        println!("criterion {} [{}] {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
