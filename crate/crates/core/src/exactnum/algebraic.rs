//! Real algebraic numbers as (squarefree polynomial, isolating interval).

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{common_rounding, rational_to_digits, IntPolynomial, Rational, SturmSequence};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Bracket {
    lo: Rational,
    hi: Rational,
}

#[derive(Debug)]
struct Inner {
    poly: IntPolynomial,
    /// Sign of `poly` just to the right of every left endpoint.
    lo_sign: Ordering,
    bracket: RwLock<Bracket>,
}

/// A real root of an integer polynomial. The interval is refined in place
/// behind a lock, so clones share refinement work and may cross threads.
#[derive(Clone)]
pub struct AlgebraicReal {
    inner: Arc<Inner>,
}

impl AlgebraicReal {
    /// The unique root of `poly` in `[lo, hi]`; fails unless there is
    /// exactly one.
    pub fn new(poly: &IntPolynomial, lo: &Rational, hi: &Rational) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::UndefinedRootSet);
        }
        if lo > hi {
            return Err(Error::EmptyWindow { lo: lo.to_string(), hi: hi.to_string() });
        }
        let mut roots = super::isolate_real_roots(poly, Some((lo, hi)))?;
        if roots.len() != 1 {
            return Err(Error::NotIsolating { lo: lo.to_string(), hi: hi.to_string(), count: roots.len() });
        }
        Ok(roots.pop().unwrap())
    }

    pub fn from_rational(r: &Rational) -> Self {
        let poly = IntPolynomial::new(vec![-r.numer().clone(), r.denom().clone()]);
        Self::exact_root(&poly, r.clone())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    pub(crate) fn exact_root(poly: &IntPolynomial, r: Rational) -> Self {
        AlgebraicReal {
            inner: Arc::new(Inner {
                poly: poly.clone(),
                lo_sign: Ordering::Equal,
                bracket: RwLock::new(Bracket { lo: r.clone(), hi: r }),
            }),
        }
    }

    /// `poly` must be squarefree with a single root strictly inside `(lo, hi)`
    /// and no root at either endpoint.
    pub(crate) fn from_isolating_unchecked(poly: &IntPolynomial, lo: Rational, hi: Rational) -> Self {
        let lo_sign = poly.sign_at(&lo);
        debug_assert_ne!(lo_sign, Ordering::Equal);
        AlgebraicReal {
            inner: Arc::new(Inner { poly: poly.clone(), lo_sign, bracket: RwLock::new(Bracket { lo, hi }) }),
        }
    }

    /// The squarefree defining polynomial.
    pub fn defining(&self) -> &IntPolynomial {
        &self.inner.poly
    }

    pub fn interval(&self) -> (Rational, Rational) {
        let b = self.inner.bracket.read().unwrap();
        (b.lo.clone(), b.hi.clone())
    }

    pub fn width(&self) -> Rational {
        let b = self.inner.bracket.read().unwrap();
        &b.hi - &b.lo
    }

    /// The value itself when it is known to be rational.
    pub fn exact(&self) -> Option<Rational> {
        let b = self.inner.bracket.read().unwrap();
        (b.lo == b.hi).then(|| b.lo.clone())
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    /// One bisection step; the new interval is one of the two halves.
    pub fn refine(&self) {
        let mut b = self.inner.bracket.write().unwrap();
        if b.lo == b.hi {
            return;
        }
        let m = (&b.lo + &b.hi) / Rational::from_integer(2.into());
        let s = self.inner.poly.sign_at(&m);
        if s == Ordering::Equal {
            b.lo = m.clone();
            b.hi = m;
        } else if s == self.inner.lo_sign {
            b.lo = m;
        } else {
            b.hi = m;
        }
    }

    pub fn refine_to_width(&self, width: &Rational) {
        while &self.width() > width {
            self.refine();
        }
    }

    /// Decimal string with error below half a unit in the last place,
    /// rounded half to even. Only rational values can sit exactly on a
    /// rounding boundary and those are rounded exactly.
    pub fn refine_to_digits(&self, digits: usize) -> String {
        loop {
            if let Some(r) = self.exact() {
                return rational_to_digits(&r, digits);
            }
            let (lo, hi) = self.interval();
            if let Some(s) = common_rounding(&lo, &hi, digits) {
                return s;
            }
            for _ in 0..4 {
                self.refine();
            }
        }
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        loop {
            if let Some(x) = self.exact() {
                return x.cmp(r);
            }
            let (lo, hi) = self.interval();
            if r <= &lo {
                return Ordering::Greater;
            }
            if r >= &hi {
                return Ordering::Less;
            }
            if self.inner.poly.sign_at(r) == Ordering::Equal {
                return Ordering::Equal;
            }
            self.refine();
        }
    }

    /// Exact comparison; equality is decided through the gcd of the two
    /// defining polynomials, never by decimal agreement.
    pub fn cmp_algebraic(&self, other: &Self) -> Ordering {
        if self.ptr_eq(other) {
            return Ordering::Equal;
        }
        if let Some(r) = other.exact() {
            return self.cmp_rational(&r);
        }
        if let Some(r) = self.exact() {
            return other.cmp_rational(&r).reverse();
        }
        let g = self.defining().gcd(other.defining());
        let gs = (!g.is_constant()).then(|| SturmSequence::new(&g));
        loop {
            let (a_lo, a_hi) = self.interval();
            let (b_lo, b_hi) = other.interval();
            if a_hi <= b_lo && self.exact().is_none() {
                return Ordering::Less;
            }
            if b_hi <= a_lo && other.exact().is_none() {
                return Ordering::Greater;
            }
            if let Some(gs) = &gs {
                let both_roots = gs.count_closed(&a_lo, &a_hi) > 0 && gs.count_closed(&b_lo, &b_hi) > 0;
                let lo = a_lo.clone().min(b_lo.clone());
                let hi = a_hi.clone().max(b_hi.clone());
                if both_roots && gs.count_closed(&lo, &hi) == 1 {
                    return Ordering::Equal;
                }
            }
            self.refine();
            other.refine();
            if let Some(r) = self.exact() {
                return other.cmp_rational(&r).reverse();
            }
            if let Some(r) = other.exact() {
                return self.cmp_rational(&r);
            }
        }
    }

    /// True when `p` vanishes at this number.
    pub fn is_root_of(&self, p: &IntPolynomial) -> bool {
        if p.is_zero() {
            return true;
        }
        if let Some(r) = self.exact() {
            return p.sign_at(&r) == Ordering::Equal;
        }
        let g = self.defining().gcd(p);
        if g.is_constant() {
            return false;
        }
        let (lo, hi) = self.interval();
        SturmSequence::new(&g).count_closed(&lo, &hi) > 0
    }

    pub fn to_f64(&self) -> f64 {
        self.refine_to_width(&Rational::new(1.into(), BigInt::from(1u64) << 60));
        let (lo, hi) = self.interval();
        ((lo + hi) / Rational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }

    pub fn signum(&self) -> Ordering {
        self.cmp_rational(&Rational::zero())
    }
}

impl PartialEq for AlgebraicReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_algebraic(other) == Ordering::Equal
    }
}

impl Eq for AlgebraicReal {}

impl PartialOrd for AlgebraicReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_algebraic(other)
    }
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.interval();
        write!(f, "AlgebraicReal(root of {} in [{}, {}])", self.inner.poly, lo, hi)
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.refine_to_digits(f.precision().unwrap_or(5)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, parse_rational, rat};

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn refinement_halves_width() {
        let a = AlgebraicReal::new(&p(&[1, -1, 0, -1, -1, 1]), &int(1), &int(2)).unwrap();
        let w0 = a.width();
        for k in 1..=20 {
            a.refine();
            assert!(a.width() <= &w0 / Rational::from_integer(BigInt::from(1u64) << k));
        }
        assert_eq!(a.refine_to_digits(5), "1.68042");
    }

    #[test]
    fn exact_rational_digits() {
        let a = AlgebraicReal::new(&p(&[-1, 0, 1]), &rat(1, 2), &rat(3, 2)).unwrap();
        assert_eq!(a.refine_to_digits(3), "1.000");
    }

    #[test]
    fn non_isolating_window_rejected() {
        let e = AlgebraicReal::new(&p(&[-1, 0, 1]), &int(-2), &int(2)).unwrap_err();
        assert!(matches!(e, Error::NotIsolating { count: 2, .. }));
    }

    #[test]
    fn compare_with_rationals() {
        let q3 = AlgebraicReal::new(&p(&[1, -1, 0, -1, -1, 1]), &int(1), &int(2)).unwrap();
        // q3 = 1.6804200702...
        assert_eq!(q3.cmp_rational(&parse_rational("1.68043").unwrap()), Ordering::Less);
        assert_eq!(q3.cmp_rational(&parse_rational("1.68042").unwrap()), Ordering::Greater);
    }

    #[test]
    fn equality_between_different_polynomials() {
        let g1 = AlgebraicReal::new(&p(&[-1, -1, 1]), &int(1), &int(2)).unwrap();
        // (x^2-x-1)(x^2+1) has the golden ratio as its only positive root
        let f = &p(&[-1, -1, 1]) * &p(&[1, 0, 1]);
        let g2 = AlgebraicReal::new(&f, &rat(3, 2), &int(5)).unwrap();
        assert_eq!(g1.cmp_algebraic(&g2), Ordering::Equal);
        let other = AlgebraicReal::new(&p(&[1, -1, -1, -1, 1]), &int(1), &int(2)).unwrap();
        assert_ne!(g1.cmp_algebraic(&other), Ordering::Equal);
        assert_eq!(g1.cmp_algebraic(&other), other.cmp_algebraic(&g1).reverse());
    }

    #[test]
    fn is_root_of_uses_exact_gcd() {
        let g = AlgebraicReal::new(&p(&[-1, -1, 1]), &int(1), &int(2)).unwrap();
        assert!(g.is_root_of(&(&p(&[-1, -1, 1]) * &p(&[5, 1]))));
        assert!(!g.is_root_of(&p(&[1, 1, 1])));
        // shares the factor but at the conjugate, not at the golden ratio
        let h = AlgebraicReal::new(&p(&[-1, -1, 1]), &int(-1), &int(0)).unwrap();
        assert!(!g.is_root_of(&(&p(&[-1, 1]) * &p(&[3, 0, 1]))));
        assert!(h.is_root_of(&p(&[-1, -1, 1])));
    }
}
