//! Machine checks of the main results: the structure of the expansions of
//! 1 at q3, the conjugate exclusion at q1 and q2, and the base search.

mod series;

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

pub use series::{check_modulus, finite_sum, Extremum, SeriesBound};

use crate::branching::{
    classify_sigma, cycle_certificate_check, default_depth, feasible_prefixes, is_null_infinite, minimal_to_switch,
    NullInfinite, SigmaClass, SwitchOutcome,
};
use crate::constants::NamedConstant;
use crate::error::{Error, Result};
use crate::exactnum::{int, isolate_real_roots, IntPolynomial, QField, QFieldElement, Rational};
use crate::expansions::{
    digits_to_string, in_switch, parse_digits, pi_value, t_apply, t_apply_word, Base, DigitWord, PointSpec,
    SpecialPoint,
};
use crate::search::b_aleph0_in;
use crate::symbolic::Window;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Certified,
    Failed,
    /// Some check hit the branching depth limit.
    Partial(usize),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Certified => f.write_str("Certified"),
            Status::Failed => f.write_str("Failed"),
            Status::Partial(d) => write!(f, "Partial({d})"),
        }
    }
}

/// One exact comparison or structural check.
#[derive(Clone, Debug)]
pub struct Evidence {
    pub check: String,
    pub passed: bool,
    pub lhs_exact: String,
    pub rhs_exact: String,
    pub margin_5dp: String,
}

impl Evidence {
    fn flag(check: impl Into<String>, passed: bool, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        Evidence {
            check: check.into(),
            passed,
            lhs_exact: lhs.into(),
            rhs_exact: rhs.into(),
            margin_5dp: String::new(),
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "status": if self.passed { "pass" } else { "fail" },
            "lhs_exact": self.lhs_exact,
            "rhs_exact": self.rhs_exact,
            "margin_5dp": self.margin_5dp,
        })
    }
}

#[derive(Clone, Debug)]
pub struct TheoremVerdict {
    /// Short identifier used on the command line.
    pub id: &'static str,
    pub name: String,
    pub status: Status,
    pub evidence: Vec<Evidence>,
    /// Computed quantities worth printing, such as conjugate values.
    pub facts: Vec<(String, String)>,
}

impl TheoremVerdict {
    fn from_evidence(
        id: &'static str,
        name: impl Into<String>,
        evidence: Vec<Evidence>,
        facts: Vec<(String, String)>,
    ) -> Self {
        let status = if evidence.iter().all(|e| e.passed) { Status::Certified } else { Status::Failed };
        TheoremVerdict { id, name: name.into(), status, evidence, facts }
    }

    fn failed(id: &'static str, name: impl Into<String>, check: &str, err: &Error) -> Self {
        TheoremVerdict {
            id,
            name: name.into(),
            status: Status::Failed,
            evidence: vec![Evidence::flag(check, false, err.to_string(), "")],
            facts: Vec::new(),
        }
    }

    pub fn is_certified(&self) -> bool {
        self.status == Status::Certified
    }

    /// First failing check, if any.
    pub fn first_failure(&self) -> Option<&Evidence> {
        self.evidence.iter().find(|e| !e.passed)
    }

    pub fn to_json(&self) -> Value {
        let facts: serde_json::Map<String, Value> =
            self.facts.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        json!({
            "id": self.id,
            "name": self.name,
            "status": self.status.to_string(),
            "evidence": self.evidence.iter().map(Evidence::to_json).collect::<Vec<_>>(),
            "facts": facts,
        })
    }
}

fn pretty_in(x: &QFieldElement, var: &str) -> String {
    let (num, den) = x.parts();
    let n = num.display_in(var);
    if den == &1.into() {
        n
    } else {
        format!("({n})/{den}")
    }
}

/// The conjugate-root argument: with `b` the unique root of `defining` in
/// the window, `1 - sum prefix_i b^(-i)` must lie outside the exact range
/// of `sum_{i>n} d_i b^(-i)` over all digit tails.
pub fn conjugate_exclusion(
    defining: &IntPolynomial,
    window: (&Rational, &Rational),
    prefix: &[u8],
) -> Result<TheoremVerdict> {
    let roots = isolate_real_roots(defining, Some(window))?;
    if roots.len() != 1 {
        return Err(Error::NotIsolating { lo: window.0.to_string(), hi: window.1.to_string(), count: roots.len() });
    }
    let b = roots.into_iter().next().unwrap();
    check_modulus(&b)?;
    let field = QField::new(b.clone());
    let n = prefix.len();
    let lhs = &field.one() - &finite_sum(&field, 0, prefix)?;
    let sup = SeriesBound::new(&field, n, Extremum::Sup)?.value;
    let inf = SeriesBound::new(&field, n, Extremum::Inf)?.value;
    let mut above = Evidence::flag(
        "1 - prefix sum > sup of tails",
        lhs.cmp_element(&sup)?.is_gt(),
        pretty_in(&lhs, "b"),
        pretty_in(&sup, "b"),
    );
    above.margin_5dp = (&lhs - &sup).refine_to_digits(5);
    let mut below = Evidence::flag(
        "1 - prefix sum < inf of tails",
        lhs.cmp_element(&inf)?.is_lt(),
        pretty_in(&lhs, "b"),
        pretty_in(&inf, "b"),
    );
    below.margin_5dp = (&lhs - &inf).refine_to_digits(5);
    let certified = above.passed || below.passed;
    let facts = vec![
        ("conjugate".to_string(), b.refine_to_digits(5)),
        ("prefix".to_string(), digits_to_string(prefix)),
        ("lhs".to_string(), lhs.refine_to_digits(5)),
        ("tail_range".to_string(), format!("[{}, {}]", inf.refine_to_digits(5), sup.refine_to_digits(5))),
    ];
    Ok(TheoremVerdict {
        id: "4.2",
        name: format!("no expansion of 1 survives conjugation by {}", b.refine_to_digits(5)),
        status: if certified { Status::Certified } else { Status::Failed },
        evidence: vec![above, below],
        facts,
    })
}

/// `11` followed by the forced maps to the switch region: 1 reaches S
/// after one `T1`, and the second `T1` drops it into L, from where only
/// `T0` applies until S is reached again.
pub fn exclusion_prefix(base: &Base) -> Result<DigitWord> {
    let one = PointSpec::one(base);
    let p = t_apply(&one, 1, base)?;
    if !in_switch(&p.value, base)? {
        return Err(Error::ConjugatePrecondition("T1(1) is not in the switch region".into()));
    }
    match minimal_to_switch(&t_apply(&p, 1, base)?, base, 512)? {
        SwitchOutcome::Landed { word, .. } => Ok([vec![1, 1], word].concat()),
        _ => Err(Error::ConjugatePrecondition("T1(T1(1)) does not return to the switch region".into())),
    }
}

/// Exclusion at q1 (printed prefix `1100000`) and at q2 (computed
/// prefix), each prefix checked against [`exclusion_prefix`].
pub fn verify_conjugate_exclusion() -> TheoremVerdict {
    let mut evidence = Vec::new();
    let mut facts = Vec::new();
    let cases = [(NamedConstant::Q1, Some("1100000")), (NamedConstant::Q2, None)];
    for (c, printed) in cases {
        let forced = match exclusion_prefix(c.base()) {
            Ok(w) => w,
            Err(e) => return TheoremVerdict::failed("4.2", "conjugate exclusion", "forced prefix", &e),
        };
        let prefix = printed.map(|p| parse_digits(p).unwrap()).unwrap_or_else(|| forced.clone());
        evidence.push(Evidence::flag(
            format!("{c}: prefix is 11 then forced maps back to S"),
            prefix == forced,
            digits_to_string(&prefix),
            digits_to_string(&forced),
        ));
        let (_, window) = c.conjugate().expect("q1 and q2 have tabulated conjugates");
        match conjugate_exclusion(&c.polynomial(), (&window.0, &window.1), &prefix) {
            Ok(v) => {
                let certified = v.is_certified();
                // One strict inequality suffices; keep the side that holds.
                for mut e in v.evidence.into_iter().filter(|e| e.passed || !certified) {
                    e.check = format!("{c}: {}", e.check);
                    evidence.push(e);
                }
                for (k, val) in v.facts {
                    facts.push((format!("{c}_{k}"), val));
                }
            }
            Err(e) => evidence.push(Evidence::flag(format!("{c}: exclusion"), false, e.to_string(), "")),
        }
    }
    TheoremVerdict::from_evidence("4.2", "1 has uncountably many expansions at q1 and q2", evidence, facts)
}

/// Structure of the expansions of 1 at q3 (or at another base for
/// negative controls), checked up to `k = big_k`:
/// (a) `(T0^3 T1)^k (T1(1))` lies in S; (b) its `T0` image is the value of
/// `1(10)^inf`; (c) the words taking 1 into S within length `4(K+1)` are
/// exactly `1(1000)^k`; (d) the expansions of 1 truncated to length `4K`
/// are exactly the truncations of `1(1000)^k 01(10)^inf` and `1(1000)^inf`.
pub fn verify_sigma_structure(base: &Base, big_k: usize) -> TheoremVerdict {
    let name = format!("1 has countably many expansions at {}", base.decimal(5));
    match sigma_checks(base, big_k) {
        Ok(ev) => TheoremVerdict::from_evidence("4.1", name, ev, vec![("K".into(), big_k.to_string())]),
        Err(e) => TheoremVerdict::failed("4.1", name, "structure", &e),
    }
}

pub fn verify_sigma_q3_structure(big_k: usize) -> TheoremVerdict {
    verify_sigma_structure(NamedConstant::Q3.base(), big_k)
}

fn sigma_checks(base: &Base, big_k: usize) -> Result<Vec<Evidence>> {
    let mut ev = Vec::new();
    let one = PointSpec::one(base);
    let unique_tail = pi_value(&"1|10".parse().unwrap(), base);
    let mut p = t_apply(&one, 1, base)?;
    let cycle = [1u8, 0, 0, 0];
    for k in 0..=big_k {
        let ok = in_switch(&p.value, base)?;
        if !ok || k == 0 || k == big_k {
            ev.push(Evidence::flag(
                format!("(a) k={k}: orbit point in S"),
                ok,
                p.value.to_pretty(),
                "[1/q, 1/(q^2-q)]",
            ));
        }
        if !ok {
            return Ok(ev);
        }
        let t0 = t_apply(&p, 0, base)?;
        let ok = t0.value == unique_tail;
        if !ok || k == 0 || k == big_k {
            ev.push(Evidence::flag(
                format!("(b) k={k}: T0 image is 1(10)^inf"),
                ok,
                t0.value.to_pretty(),
                unique_tail.to_pretty(),
            ));
        }
        if !ok {
            return Ok(ev);
        }
        if k < big_k {
            p = match t_apply_word(&p, &cycle, base) {
                Ok(x) => x,
                Err(e) => {
                    ev.push(Evidence::flag(format!("(a) k={}: orbit defined", k + 1), false, e.to_string(), ""));
                    return Ok(ev);
                }
            };
        }
    }
    // (c) every applicable map word of length <= 4(K+1) sending 1 into S.
    let limit = 4 * (big_k + 1);
    let mut hits = BTreeSet::new();
    let mut stack = vec![(Vec::<u8>::new(), one.clone())];
    while let Some((w, x)) = stack.pop() {
        if w.len() == limit {
            continue;
        }
        for d in [0u8, 1] {
            let Ok(y) = t_apply(&x, d, base) else { continue };
            let mut w2 = w.clone();
            w2.push(d);
            if in_switch(&y.value, base)? {
                hits.insert(w2.clone());
            }
            stack.push((w2, y));
        }
    }
    let expected: BTreeSet<DigitWord> = (0..)
        .map(|k| {
            let mut w = vec![1u8];
            for _ in 0..k {
                w.extend_from_slice(&cycle);
            }
            w
        })
        .take_while(|w| w.len() <= limit)
        .collect();
    ev.push(Evidence::flag(
        format!("(c) words into S up to length {limit} are 1(1000)^k"),
        hits == expected,
        format!("{} words", hits.len()),
        format!("{} words", expected.len()),
    ));
    // (d) the feasible prefixes of length 4K are the family's truncations.
    let n = 4 * big_k;
    let feasible = feasible_prefixes(&one, base, n)?;
    let family = sigma_q3_family(n);
    ev.push(Evidence::flag(
        format!("(d) prefixes of length {n} match the word family"),
        feasible == family,
        format!("{} prefixes", feasible.len()),
        format!("{} prefixes", family.len()),
    ));
    Ok(ev)
}

/// Truncations to length n of `1(1000)^k 01(10)^inf` (k >= 0) and
/// `1(1000)^inf`.
pub fn sigma_q3_family(n: usize) -> BTreeSet<DigitWord> {
    let mut out = BTreeSet::new();
    let periodic: DigitWord = std::iter::once(1).chain([1u8, 0, 0, 0].into_iter().cycle()).take(n).collect();
    out.insert(periodic);
    for k in 0.. {
        let mut w = vec![1u8];
        for _ in 0..k {
            w.extend_from_slice(&[1, 0, 0, 0]);
        }
        if w.len() >= n {
            break;
        }
        w.extend_from_slice(&[0, 1]);
        while w.len() < n {
            w.extend_from_slice(&[1, 0]);
        }
        w.truncate(n);
        out.insert(w);
    }
    out
}

/// Expected shortest cycle at each base of the search: q3 fixes y1 by
/// `T0^3 T1`; q2 alternates y1 and z1; q1 alternates y3 and z3.
fn expected_cycle(c: NamedConstant) -> Option<(&'static [SpecialPoint], &'static [&'static str])> {
    use SpecialPoint::*;
    match c {
        NamedConstant::Q3 => Some((&[Y(1)], &["1000"])),
        NamedConstant::Q2 => Some((&[Y(1), Z(1)], &["10000111", "01111000"])),
        NamedConstant::Q1 => Some((&[Y(3), Z(3)], &["1001", "0110"])),
        _ => None,
    }
}

/// The bases in `(golden, q3]` with a null infinite point are exactly q1,
/// q2 and q3, each with a re-verified cycle certificate.
pub fn verify_search(window: &Window, depth: usize) -> TheoremVerdict {
    let name = format!("bases with countably many expansions in {window}");
    let report = match b_aleph0_in(window, depth) {
        Ok(r) => r,
        Err(e) => return TheoremVerdict::failed("1.2", name, "search", &e),
    };
    let mut ev = Vec::new();
    let mut found = Vec::new();
    for h in &report.hits {
        let label = h.named.map_or(h.decimal.clone(), |c| c.name().to_string());
        found.push(label.clone());
        ev.push(Evidence::flag(
            format!("{label}: cycle certificate re-verifies"),
            h.check.valid,
            format!("w = {}", h.witness.w.decimal(5)),
            format!("b = {}", digits_to_string(&h.witness.b)),
        ));
        let Some(c) = h.named else {
            ev.push(Evidence::flag(format!("{label}: equals a named constant"), false, h.polynomial.to_string(), ""));
            continue;
        };
        ev.push(Evidence::flag(
            format!("{label}: defining polynomial divides the orbit polynomial"),
            h.named_divides,
            h.polynomial.to_string(),
            c.polynomial().to_string(),
        ));
        if let Some((points, words)) = expected_cycle(c) {
            let w_special = h.w_special;
            let b = digits_to_string(&h.witness.b);
            ev.push(Evidence::flag(
                format!("{label}: cycle matches"),
                w_special.is_some_and(|s| points.contains(&s)) && words.contains(&b.as_str()),
                format!("{} by {b}", w_special.map_or("?".into(), |s| s.to_string())),
                words.join(" or "),
            ));
        }
    }
    let mut expected: Vec<String> = [NamedConstant::Q1, NamedConstant::Q2, NamedConstant::Q3]
        .into_iter()
        .filter(|c| window.contains(&c.value()))
        .map(|c| c.name().to_string())
        .collect();
    expected.sort();
    let mut got = found.clone();
    got.sort();
    ev.insert(0, Evidence::flag("base set", got == expected, found.join(", "), expected.join(", ")));
    let rejected = report.rejected.iter().map(|r| r.decimal.clone()).collect::<Vec<_>>().join(", ");
    let facts = vec![("bases".into(), found.join(", ")), ("rejected".into(), rejected)];
    TheoremVerdict::from_evidence("1.2", name, ev, facts)
}

/// `(golden, q3]`.
pub fn main_window() -> Window {
    Window { lo: NamedConstant::Golden.value(), hi: NamedConstant::Q3.value(), lo_closed: false, hi_closed: true }
}

#[derive(Clone, Debug)]
pub struct AssembleOptions {
    /// Defining polynomial used for q3 (root taken in (1, 2)).
    pub q3_polynomial: IntPolynomial,
    pub sigma_k: usize,
    pub depth: usize,
}

impl Default for AssembleOptions {
    fn default() -> Self {
        AssembleOptions { q3_polynomial: NamedConstant::Q3.polynomial(), sigma_k: 50, depth: default_depth() }
    }
}

pub fn assemble_main_theorems() -> Vec<TheoremVerdict> {
    assemble_with(&AssembleOptions::default())
}

/// The search, the q3 structure and the conjugate exclusion, followed by
/// their conclusion: the smallest base above the golden ratio at which 1
/// has countably many expansions is q3.
pub fn assemble_with(opts: &AssembleOptions) -> Vec<TheoremVerdict> {
    let search = verify_search(&main_window(), opts.depth);
    let sigma = match Base::from_polynomial(&opts.q3_polynomial, &int(1), &int(2)) {
        Ok(base) => sigma_with_classification(&base, opts.sigma_k, opts.depth),
        Err(e) => TheoremVerdict::failed(
            "4.1",
            "1 has countably many expansions at q3",
            "q3 polynomial has one root in (1, 2)",
            &e,
        ),
    };
    let conj = verify_conjugate_exclusion();
    let mut ev = Vec::new();
    for v in [&search, &sigma, &conj] {
        ev.push(Evidence::flag(
            format!("component {}: {}", v.id, v.name),
            v.is_certified(),
            v.status.to_string(),
            "Certified",
        ));
    }
    // The base at which 1 was shown to have countably many expansions must
    // be the largest element of the search result.
    let q3 = Base::from_polynomial(&opts.q3_polynomial, &int(1), &int(2));
    let agrees = q3.map(|b| b.q().cmp_algebraic(&NamedConstant::Q3.value()).is_eq()).unwrap_or(false);
    ev.push(Evidence::flag(
        "structure base equals the largest searched base",
        agrees,
        opts.q3_polynomial.to_string(),
        NamedConstant::Q3.polynomial().to_string(),
    ));
    let conclusion = TheoremVerdict::from_evidence(
        "1.1",
        "smallest base above the golden ratio where 1 has countably many expansions is q3",
        ev,
        vec![("q3".into(), NamedConstant::Q3.quoted_decimal().into())],
    );
    vec![search, sigma, conj, conclusion]
}

/// Structure checks plus the classification and null-infinite verdict of 1.
pub fn sigma_with_classification(base: &Base, big_k: usize, depth: usize) -> TheoremVerdict {
    let mut v = verify_sigma_structure(base, big_k);
    if !v.is_certified() {
        return v;
    }
    let one = PointSpec::one(base);
    match classify_sigma(&one, base, depth) {
        Ok(c) => {
            if let SigmaClass::DepthExceeded(d) = c.class {
                v.status = Status::Partial(d);
            }
            v.evidence.push(Evidence::flag(
                "classification of 1",
                matches!(c.class, SigmaClass::CountablyInfinite),
                c.class.name(),
                "CountablyInfinite",
            ));
        }
        Err(e) => v.evidence.push(Evidence::flag("classification of 1", false, e.to_string(), "CountablyInfinite")),
    }
    match is_null_infinite(&one, base, depth) {
        Ok(NullInfinite::Yes(w)) => {
            let ok = cycle_certificate_check(&w.w, &w.b, base).map(|c| c.valid).unwrap_or(false);
            v.evidence.push(Evidence::flag(
                "1 is null infinite with a valid cycle",
                ok,
                format!("b = {}", digits_to_string(&w.b)),
                "1000",
            ));
        }
        Ok(other) => {
            v.evidence.push(Evidence::flag("1 is null infinite with a valid cycle", false, other.name(), "Yes"))
        }
        Err(e) => v.evidence.push(Evidence::flag("1 is null infinite with a valid cycle", false, e.to_string(), "Yes")),
    }
    if v.status == Status::Certified && v.evidence.iter().any(|e| !e.passed) {
        v.status = Status::Failed;
    }
    v
}
