//! Sturm sequences and real root isolation by bisection.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{AlgebraicReal, IntPolynomial, Rational};
use crate::error::{Error, Result};

/// Signed remainder sequence of a squarefree polynomial, kept primitive up
/// to positive scalars so sign variations are preserved.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<IntPolynomial>,
}

impl SturmSequence {
    pub fn new(p: &IntPolynomial) -> Self {
        let mut seq = vec![p.content_reduced()];
        let d = p.derivative().content_reduced();
        if !d.is_zero() {
            seq.push(d);
        }
        while seq.len() >= 2 {
            let n = seq.len();
            let (m, _, r) = seq[n - 2].pseudo_div_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            // m * a = q * b + r, so -r has the sign of -(a mod b) when m > 0.
            let next = if m.is_negative() { r } else { -r };
            seq.push(next.content_reduced());
        }
        SturmSequence { seq }
    }

    pub fn polynomial(&self) -> &IntPolynomial {
        &self.seq[0]
    }

    pub fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = Ordering::Equal;
        for p in &self.seq {
            let s = p.sign_at(x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations(a) - self.variations(b)
    }

    /// Number of distinct roots in the closed interval `[a, b]`.
    pub fn count_closed(&self, a: &Rational, b: &Rational) -> usize {
        let at_a = usize::from(self.seq[0].sign_at(a) == Ordering::Equal);
        if a == b {
            return at_a;
        }
        at_a + self.count_half_open(a, b)
    }
}

/// Distinct real roots of `p` in the closed interval `[a, b]`.
pub fn count_roots_closed(p: &IntPolynomial, a: &Rational, b: &Rational) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::UndefinedRootSet);
    }
    Ok(SturmSequence::new(&p.squarefree()).count_closed(a, b))
}

/// Absolute bound on real roots: `1 + max |a_i / a_n|`.
pub(crate) fn cauchy_bound(p: &IntPolynomial) -> Rational {
    let lc = p.leading().expect("nonzero polynomial").abs();
    let max = p.coeffs().iter().map(Signed::abs).max().unwrap_or_else(BigInt::zero);
    Rational::from_integer(1.into()) + Rational::new(max, lc)
}

/// All distinct real roots of `p` in the closed `window` (every real root
/// if no window is given), sorted ascending, each with a certified
/// isolating interval.
pub fn isolate_real_roots(p: &IntPolynomial, window: Option<(&Rational, &Rational)>) -> Result<Vec<AlgebraicReal>> {
    if p.is_zero() {
        return Err(Error::UndefinedRootSet);
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let sf = p.squarefree();
    let (lo, hi) = match window {
        Some((a, b)) => {
            if a > b {
                return Err(Error::EmptyWindow { lo: a.to_string(), hi: b.to_string() });
            }
            (a.clone(), b.clone())
        }
        None => {
            let b = cauchy_bound(&sf);
            (-b.clone(), b)
        }
    };
    let sturm = SturmSequence::new(&sf);
    let mut out = Vec::new();
    if sf.sign_at(&lo) == Ordering::Equal {
        out.push(AlgebraicReal::exact_root(&sf, lo.clone()));
    }
    if lo < hi {
        bisect(&sf, &sturm, lo, hi, true, &mut out);
    }
    Ok(out)
}

/// Roots in `(a, b]`, or `(a, b)` when `include_b` is false.
fn bisect(
    p: &IntPolynomial,
    sturm: &SturmSequence,
    a: Rational,
    b: Rational,
    include_b: bool,
    out: &mut Vec<AlgebraicReal>,
) {
    let b_root = p.sign_at(&b) == Ordering::Equal;
    let mut count = sturm.count_half_open(&a, &b);
    if b_root && !include_b {
        count -= 1;
    }
    if count == 0 {
        return;
    }
    if b_root && include_b {
        bisect(p, sturm, a, b.clone(), false, out);
        out.push(AlgebraicReal::exact_root(p, b));
        return;
    }
    if count == 1 && !b_root && p.sign_at(&a) != Ordering::Equal {
        out.push(AlgebraicReal::from_isolating_unchecked(p, a, b));
        return;
    }
    let m = (&a + &b) / Rational::from_integer(2.into());
    bisect(p, sturm, a, m.clone(), true, out);
    bisect(p, sturm, m, b, include_b, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn golden_ratio_isolated() {
        let roots = isolate_real_roots(&p(&[-1, -1, 1]), Some((&int(1), &int(2)))).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].refine_to_digits(5), "1.61803");
    }

    #[test]
    fn all_roots_default_window() {
        // (x-1)(x+2)(x^2-2)
        let f = &(&p(&[-1, 1]) * &p(&[2, 1])) * &p(&[-2, 0, 1]);
        let roots = isolate_real_roots(&f, None).unwrap();
        let d: Vec<_> = roots.iter().map(|r| r.refine_to_digits(4)).collect();
        assert_eq!(d, ["-2.0000", "-1.4142", "1.0000", "1.4142"]);
    }

    #[test]
    fn endpoint_roots_are_exact() {
        let f = p(&[-1, 0, 1]);
        let roots = isolate_real_roots(&f, Some((&int(-1), &int(1)))).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.exact().is_some()));
    }

    #[test]
    fn repeated_roots_counted_once() {
        let f = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[-3, 1]);
        assert_eq!(isolate_real_roots(&f, None).unwrap().len(), 2);
        assert_eq!(count_roots_closed(&f, &int(0), &int(3)).unwrap(), 2);
        assert_eq!(count_roots_closed(&f, &rat(3, 2), &rat(5, 2)).unwrap(), 0);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(isolate_real_roots(&IntPolynomial::zero(), None).unwrap_err(), Error::UndefinedRootSet);
    }
}
