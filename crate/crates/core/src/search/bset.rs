//! Candidate orbit equations on [q1, q3] and the bases among their roots
//! admitting a point with countably many expansions.

use std::cmp::Ordering;

use super::equation::{solve_in, special_rf, symbolic_orbit, CandidateEquation, Step};
use crate::branching::{
    cycle_certificate_check, is_null_infinite, CycleCheck, CycleWitness, NotNullWitness, NullInfinite,
};
use crate::constants::NamedConstant;
use crate::error::{Error, Result};
use crate::exactnum::{AlgebraicReal, IntPolynomial};
use crate::expansions::{identify_special, make_y, make_z, Base, SpecialPoint, SpecialPoint::*};
use crate::symbolic::{resolve_sign_window, RationalFunction, SignVerdict, Window};

const T0_T1: &[u8] = &[1, 0];
const T0_2_T1: &[u8] = &[1, 0, 0];
const T0_3_T1: &[u8] = &[1, 0, 0, 0];
const ESC2: &[u8] = &[1, 0, 0, 1, 0];
const ESC3: &[u8] = &[1, 0, 0, 1];

/// Largest k tried when certifying that the index function stays bounded.
pub const K_CAP: usize = 64;
/// How many k are listed for a family whose index is unbounded.
const K_LIST: usize = 12;

/// The switch-region points mapping into the unique-expansion set that
/// lie in J, for q in [q1, q3].
pub fn j_targets() -> [SpecialPoint; 6] {
    [Y(1), Y(2), Y(3), Z(1), Z(2), Z(3)]
}

/// Intersection of a window with `[lo, hi]` (either end optionally open).
fn clip(w: &Window, lo: (AlgebraicReal, bool), hi: (AlgebraicReal, bool)) -> Option<Window> {
    let (l, lc) = match w.lo.cmp_algebraic(&lo.0) {
        Ordering::Greater => (w.lo.clone(), w.lo_closed),
        Ordering::Less => lo,
        Ordering::Equal => (w.lo.clone(), w.lo_closed && lo.1),
    };
    let (h, hc) = match w.hi.cmp_algebraic(&hi.0) {
        Ordering::Less => (w.hi.clone(), w.hi_closed),
        Ordering::Greater => hi,
        Ordering::Equal => (w.hi.clone(), w.hi_closed && hi.1),
    };
    match l.cmp_algebraic(&h) {
        Ordering::Less => Some(Window { lo: l, hi: h, lo_closed: lc, hi_closed: hc }),
        Ordering::Equal if lc && hc => Some(Window { lo: l, hi: h, lo_closed: true, hi_closed: true }),
        _ => None,
    }
}

/// One equation together with the q-range on which its pattern applies.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub pattern: &'static str,
    pub equation: CandidateEquation,
    pub window: Window,
}

/// Feasible indices k for `lhs = y_k` (or `z_k`) with `k >= min_k`.
#[derive(Clone, Debug)]
pub struct KRange {
    pub pattern: &'static str,
    pub window: Window,
    pub min_k: usize,
    pub feasible: Vec<usize>,
    /// Every k at or beyond this bound has no solution in the window;
    /// `None` when the index function is unbounded on the window.
    pub bound: Option<usize>,
    /// Whether the limit point (1/(q^2-q) or 1/q) is itself reached.
    pub limit_feasible: bool,
    /// Sign certificates, as (expression, verdict).
    pub certificates: Vec<(String, String)>,
}

fn gap(k: usize) -> RationalFunction {
    let den = &IntPolynomial::monomial(1.into(), k + 1) * &IntPolynomial::from_i64s(&[-1, 0, 1]);
    RationalFunction::new(IntPolynomial::one(), den).unwrap()
}

/// With `t_k -> t_inf` (`y_k` increases to 1/(q^2-q), `z_k` decreases to
/// 1/q) and `t_inf - t_k = ±q^(-k-1)/(q^2-1)`, the equation `lhs = t_k`
/// has no solution for k >= K once `lhs - t_k` has the sign of
/// `lhs - t_inf` throughout the window at k = K.
pub fn k_range(
    pattern: &'static str,
    lhs: &RationalFunction,
    y_family: bool,
    min_k: usize,
    w: &Window,
) -> Result<KRange> {
    let limit = special_rf(if y_family { SRight } else { InvQ });
    let d = lhs - &limit;
    let at_limit = resolve_sign_window(&d, w)?;
    let mut certificates = vec![(
        format!("{pattern} - {}", if y_family { "1/(q^2-q)" } else { "1/q" }),
        at_limit.verdict.name().to_string(),
    )];
    // Sign of lhs - t_k relative to lhs - t_inf: y side adds the gap.
    let toward = |k: usize| if y_family { &d + &gap(k) } else { &d - &gap(k) };
    let (limit_feasible, bound) = match at_limit.verdict {
        SignVerdict::AllPositive if y_family => (false, Some(min_k)),
        SignVerdict::AllNegative if !y_family => (false, Some(min_k)),
        SignVerdict::AllPositive | SignVerdict::AllNegative => {
            let want = at_limit.verdict.name();
            let mut bound = None;
            let mut k = min_k.max(1);
            while k <= K_CAP {
                let r = resolve_sign_window(&toward(k), w)?;
                if r.verdict.name() == want {
                    certificates.push((format!("{pattern} - t_{k}"), want.to_string()));
                    bound = Some(k);
                    break;
                }
                k *= 2;
            }
            (false, bound)
        }
        SignVerdict::HasRoot(_) | SignVerdict::IdenticallyZero => (true, None),
    };
    let top = bound.unwrap_or(min_k + K_LIST);
    let mut feasible = Vec::new();
    for k in min_k..top {
        if let SignVerdict::HasRoot(_) = resolve_sign_window(&toward(k), w)?.verdict {
            feasible.push(k);
        }
    }
    Ok(KRange { pattern, window: w.clone(), min_k, feasible, bound, limit_feasible, certificates })
}

#[derive(Clone, Debug)]
pub struct CandidateSet {
    pub candidates: Vec<Candidate>,
    pub k_ranges: Vec<KRange>,
    /// Every y-side equation has a z-side mirror with the same polynomial.
    pub mirror_consistent: bool,
}

/// The finite family of orbit equations whose roots contain every base in
/// `[q1, q3]` with a null infinite point. Escape patterns whose index is
/// unbounded contribute their second equation alone, which is a superset.
pub fn enumerate_candidates(window: &Window) -> Result<CandidateSet> {
    let nc = |c: NamedConstant| c.value();
    let Some(full) = clip(window, (nc(NamedConstant::Q1), true), (nc(NamedConstant::Q3), true)) else {
        return Ok(CandidateSet { candidates: Vec::new(), k_ranges: Vec::new(), mirror_consistent: true });
    };
    let mut out = Vec::new();
    let mut k_ranges = Vec::new();
    let mut mirror_consistent = true;
    let mut push = |out: &mut Vec<Candidate>, pattern, steps: Vec<Step>, w: &Window| -> Result<()> {
        let eq = CandidateEquation::new(steps)?;
        mirror_consistent &= eq.mirror()?.cleared == eq.cleared;
        if !eq.cleared.is_constant() {
            out.push(Candidate { pattern, equation: eq, window: w.clone() });
        }
        Ok(())
    };
    for t in j_targets() {
        push(&mut out, "T0^3(T1(y1))", vec![Step::new(Y(1), T0_3_T1, t)], &full)?;
    }
    let qp = nc(NamedConstant::QPrime);
    if let Some(w) = clip(&full, (qp.clone(), true), (nc(NamedConstant::Q3), true)) {
        for t in j_targets() {
            push(&mut out, "T0^2(T1(y2))", vec![Step::new(Y(2), T0_2_T1, t)], &w)?;
        }
    }
    if let Some(w) = clip(&full, (nc(NamedConstant::Q1), true), (qp, false)) {
        escape(&mut out, &mut k_ranges, &mut push, "T0^2(T1(y2))", Y(2), T0_2_T1, ESC2, true, &w)?;
    }
    for t in j_targets() {
        push(&mut out, "T0(T1(y3))", vec![Step::new(Y(3), T0_T1, t)], &full)?;
    }
    if let Some(w) = clip(&full, (nc(NamedConstant::Q1), false), (nc(NamedConstant::Q3), true)) {
        escape(&mut out, &mut k_ranges, &mut push, "T0(T1(y3))", Y(3), T0_T1, ESC3, false, &w)?;
    }
    Ok(CandidateSet { candidates: out, k_ranges, mirror_consistent })
}

/// An orbit that first lands in `S \ J` at one of `y_k`/`z_k` (k >= 4) or
/// the matching end of S, and reaches J one branching later.
#[allow(clippy::too_many_arguments)]
fn escape(
    out: &mut Vec<Candidate>,
    k_ranges: &mut Vec<KRange>,
    push: &mut impl FnMut(&mut Vec<Candidate>, &'static str, Vec<Step>, &Window) -> Result<()>,
    pattern: &'static str,
    start: SpecialPoint,
    first: &[u8],
    second: &[u8],
    y_family: bool,
    w: &Window,
) -> Result<()> {
    let kr = k_range(pattern, &symbolic_orbit(start, first), y_family, 4, w)?;
    let label = if y_family { "escape via (S\\J)_R" } else { "escape via (S\\J)_L" };
    if kr.bound.is_some() {
        let mut firsts: Vec<SpecialPoint> = kr.feasible.iter().map(|&k| if y_family { Y(k) } else { Z(k) }).collect();
        if kr.limit_feasible {
            firsts.push(if y_family { SRight } else { InvQ });
        }
        for s in firsts {
            for u in j_targets() {
                push(out, label, vec![Step::new(start, first, s), Step::new(start, second, u)], w)?;
            }
        }
    } else {
        for u in j_targets() {
            push(out, label, vec![Step::new(start, second, u)], w)?;
        }
    }
    k_ranges.push(kr);
    Ok(())
}

/// Outcome for one seed at a candidate base.
#[derive(Clone, Debug)]
pub struct SeedVerdict {
    pub seed: SpecialPoint,
    pub verdict: &'static str,
    /// `TwoSided`, `Finite`, `Unique` or `Cycle`.
    pub witness: &'static str,
}

#[derive(Clone, Debug)]
pub struct SearchHit {
    pub q: AlgebraicReal,
    /// The base the witness points live in.
    pub base: Base,
    pub decimal: String,
    pub polynomial: IntPolynomial,
    pub named: Option<NamedConstant>,
    /// The named constant's polynomial divides `polynomial`.
    pub named_divides: bool,
    pub equations: Vec<String>,
    pub seed: SpecialPoint,
    pub witness: CycleWitness,
    /// Which closed form the cycle starts at.
    pub w_special: Option<SpecialPoint>,
    pub check: CycleCheck,
    pub seeds: Vec<SeedVerdict>,
}

#[derive(Clone, Debug)]
pub struct Rejection {
    pub q: AlgebraicReal,
    pub decimal: String,
    pub equations: Vec<String>,
    pub seeds: Vec<SeedVerdict>,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub window: Option<Window>,
    pub hits: Vec<SearchHit>,
    pub rejected: Vec<Rejection>,
    pub k_ranges: Vec<KRange>,
}

/// Bases in the window (which must lie within the golden ratio and q_f)
/// having a null infinite point; the search runs on the part of the
/// window inside `[q1, q3]`.
pub fn b_aleph0_in(window: &Window, depth: usize) -> Result<SearchReport> {
    if window.lo.cmp_algebraic(&NamedConstant::Golden.value()) == Ordering::Less
        || window.hi.cmp_algebraic(&NamedConstant::QF.value()) != Ordering::Less
    {
        return Err(Error::UnsupportedWindow(format!("{window} is not inside [golden ratio, q_f)")));
    }
    let effective = clip(window, (NamedConstant::Q1.value(), true), (NamedConstant::Q3.value(), true));
    let set = enumerate_candidates(window)?;
    // Distinct roots, with every equation they solve.
    let mut roots: Vec<(AlgebraicReal, IntPolynomial, Vec<String>)> = Vec::new();
    for c in &set.candidates {
        for r in solve_in(&c.equation, &c.window)? {
            if !r.verified {
                continue;
            }
            let text = c.equation.to_string();
            match roots.iter_mut().find(|(q, _, _)| q.cmp_algebraic(&r.root) == Ordering::Equal) {
                Some((_, _, eqs)) => {
                    if !eqs.contains(&text) {
                        eqs.push(text)
                    }
                }
                None => roots.push((r.root, c.equation.cleared.clone(), vec![text])),
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp_algebraic(&b.0));
    let mut hits = Vec::new();
    let mut rejected = Vec::new();
    for (q, poly, equations) in roots {
        let base = Base::new(q.clone())?;
        let mut seeds = Vec::new();
        let mut best: Option<(SpecialPoint, CycleWitness)> = None;
        for s in j_targets() {
            let p = match s {
                Y(j) => make_y(j, &base),
                Z(j) => make_z(j, &base),
                _ => unreachable!(),
            };
            let v = is_null_infinite(&p, &base, depth)?;
            let witness = match &v {
                NullInfinite::Yes(_) => "Cycle",
                NullInfinite::No(NotNullWitness::TwoSided { .. }) => "TwoSided",
                NullInfinite::No(NotNullWitness::Finite { .. }) => "Finite",
                NullInfinite::No(NotNullWitness::Unique(_)) => "Unique",
                NullInfinite::DepthExceeded(_) => "DepthExceeded",
            };
            seeds.push(SeedVerdict { seed: s, verdict: v.name(), witness });
            if let NullInfinite::Yes(w) = v {
                if best.as_ref().is_none_or(|(_, b)| w.b.len() < b.b.len()) {
                    best = Some((s, w));
                }
            }
        }
        let decimal = q.refine_to_digits(5);
        match best {
            Some((seed, witness)) => {
                let check = cycle_certificate_check(&witness.w, &witness.b, &base)?;
                let w_special = identify_special(&witness.w.value, &base)?;
                let named = NamedConstant::ALL.into_iter().find(|c| q.cmp_algebraic(&c.value()) == Ordering::Equal);
                let named_divides = named.is_some_and(|c| poly.pseudo_rem(&c.polynomial()).is_zero());
                hits.push(SearchHit {
                    q,
                    base,
                    decimal,
                    polynomial: poly,
                    named,
                    named_divides,
                    equations,
                    seed,
                    witness,
                    w_special,
                    check,
                    seeds,
                });
            }
            None => rejected.push(Rejection { q, decimal, equations, seeds }),
        }
    }
    Ok(SearchReport { window: effective, hits, rejected, k_ranges: set.k_ranges })
}
