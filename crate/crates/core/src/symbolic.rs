//! Rational functions in an indeterminate base q, exact identity checks and
//! certified sign resolution over q-intervals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{
    count_roots_closed, isolate_real_roots, AlgebraicReal, IntPolynomial, QField, QFieldElement, Rational,
};

/// `num / den` with `gcd(num, den) = 1`, no common integer content and a
/// positive leading coefficient in the denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl RationalFunction {
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: IntPolynomial, den: IntPolynomial) -> Self {
        if num.is_zero() {
            return RationalFunction { num, den: IntPolynomial::one() };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) =
            if g.is_constant() { (num, den) } else { (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap()) };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = IntPolynomial::new(num.coeffs().iter().map(|a| a / &c).collect());
            den = IntPolynomial::new(den.coeffs().iter().map(|a| a / &c).collect());
        }
        if den.leading().is_some_and(Signed::is_negative) {
            num = -num;
            den = -den;
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: IntPolynomial) -> Self {
        RationalFunction { num: p, den: IntPolynomial::one() }
    }

    pub fn constant(n: i64) -> Self {
        Self::from_poly(IntPolynomial::from_i64s(&[n]))
    }

    pub fn rational(r: &Rational) -> Self {
        Self::canonical(IntPolynomial::constant(r.numer().clone()), IntPolynomial::constant(r.denom().clone()))
    }

    pub fn zero() -> Self {
        Self::constant(0)
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The indeterminate q.
    pub fn q() -> Self {
        Self::from_poly(IntPolynomial::x())
    }

    /// `q^k` for any integer k.
    pub fn monomial(k: i64) -> Self {
        let m = IntPolynomial::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(m)
        } else {
            RationalFunction { num: IntPolynomial::one(), den: m }
        }
    }

    pub fn num(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn den(&self) -> &IntPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(&self.num * &other.den, &self.den * &other.num))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().div(self)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::canonical(self.num.scale(r.numer()), self.den.scale(r.denom()))
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// Value at the generator of `field`.
    pub fn eval_in(&self, field: &Arc<QField>) -> Result<QFieldElement> {
        field.from_fraction(&self.num, &self.den)
    }

    /// Comma-separated coefficient form `"num/den"`.
    pub fn to_text(&self) -> String {
        format!("{}/{}", self.num.to_coeff_string(), self.den.to_coeff_string())
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.split_once('/') {
            Some((n, d)) => Self::new(IntPolynomial::parse(n)?, IntPolynomial::parse(d)?),
            None => Ok(Self::from_poly(IntPolynomial::parse(s)?)),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.display_in("q");
        if self.den == IntPolynomial::one() {
            return f.write_str(&n);
        }
        let wrap = |p: &IntPolynomial, s: String| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.num, n), wrap(&self.den, self.den.display_in("q")))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::canonical(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::canonical(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

/// True iff `lhs - rhs` is the zero function.
pub fn identity_check(lhs: &RationalFunction, rhs: &RationalFunction) -> bool {
    (&(&lhs.num * &rhs.den) - &(&rhs.num * &lhs.den)).is_zero()
}

/// An interval of q values whose endpoints are real algebraic numbers.
#[derive(Clone, Debug)]
pub struct Window {
    pub lo: AlgebraicReal,
    pub hi: AlgebraicReal,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Window {
    pub fn closed(lo: AlgebraicReal, hi: AlgebraicReal) -> Self {
        Window { lo, hi, lo_closed: true, hi_closed: true }
    }

    pub fn rational(lo: &Rational, hi: &Rational) -> Self {
        Self::closed(AlgebraicReal::from_rational(lo), AlgebraicReal::from_rational(hi))
    }

    pub fn contains(&self, x: &AlgebraicReal) -> bool {
        let a = x.cmp_algebraic(&self.lo);
        let b = x.cmp_algebraic(&self.hi);
        (a == Ordering::Greater || (self.lo_closed && a == Ordering::Equal))
            && (b == Ordering::Less || (self.hi_closed && b == Ordering::Equal))
    }

    /// Rational hull `[lo_outer, hi_outer]` containing the window.
    pub fn outer(&self) -> (Rational, Rational) {
        (self.lo.interval().0, self.hi.interval().1)
    }

    /// A rational point strictly inside the window.
    pub fn interior_point(&self) -> Rational {
        loop {
            let a = self.lo.interval().1;
            let b = self.hi.interval().0;
            if a < b {
                return (a + b) / Rational::from_integer(2.into());
            }
            if self.lo.exact().is_some() && self.hi.exact().is_some() {
                return a;
            }
            self.lo.refine();
            self.hi.refine();
        }
    }

    /// Roots of `p` lying in the window, ascending.
    pub fn roots_of(&self, p: &IntPolynomial) -> Result<Vec<AlgebraicReal>> {
        let (lo, hi) = self.outer();
        Ok(isolate_real_roots(p, Some((&lo, &hi)))?.into_iter().filter(|r| self.contains(r)).collect())
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo.refine_to_digits(5),
            self.hi.refine_to_digits(5),
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

#[derive(Clone, Debug)]
pub enum SignVerdict {
    AllPositive,
    AllNegative,
    /// Every root of the numerator in the interval.
    HasRoot(Vec<AlgebraicReal>),
    /// The expression is the zero function, so every point is a root.
    IdenticallyZero,
}

impl SignVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            SignVerdict::AllPositive => "AllPositive",
            SignVerdict::AllNegative => "AllNegative",
            SignVerdict::HasRoot(_) => "HasRoot",
            SignVerdict::IdenticallyZero => "IdenticallyZero",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SignResolution {
    pub expression: RationalFunction,
    pub interval: Window,
    pub verdict: SignVerdict,
}

/// Certified sign of `e` over the closed rational interval `[lo, hi]`.
pub fn resolve_sign(e: &RationalFunction, lo: &Rational, hi: &Rational) -> Result<SignResolution> {
    if lo > hi {
        return Err(Error::EmptyWindow { lo: lo.to_string(), hi: hi.to_string() });
    }
    resolve_sign_window(e, &Window::rational(lo, hi))
}

/// A rational point of the window, or for a one-point window a rational
/// close enough that no root of `e`'s numerator or denominator separates
/// it from the point.
fn sample_point(e: &RationalFunction, w: &Window) -> Result<Rational> {
    if w.lo.cmp_algebraic(&w.hi) != Ordering::Equal {
        return Ok(w.interior_point());
    }
    let p = e.num() * e.den();
    loop {
        let (a, b) = w.lo.interval();
        if a == b || count_roots_closed(&p, &a, &b)? == 0 {
            return Ok(a);
        }
        w.lo.refine();
    }
}

/// Certified sign of `e` over a window with algebraic endpoints: the
/// numerator's roots are isolated exactly, then one interior sample fixes
/// the sign when there are none.
pub fn resolve_sign_window(e: &RationalFunction, w: &Window) -> Result<SignResolution> {
    let verdict = if e.is_zero() {
        SignVerdict::IdenticallyZero
    } else {
        if !w.roots_of(e.den())?.is_empty() {
            return Err(Error::PoleInWindow);
        }
        let roots = w.roots_of(e.num())?;
        if !roots.is_empty() {
            SignVerdict::HasRoot(roots)
        } else {
            let x = sample_point(e, w)?;
            let s = e.num().sign_at(&x) as i8 * e.den().sign_at(&x) as i8;
            if s > 0 {
                SignVerdict::AllPositive
            } else {
                SignVerdict::AllNegative
            }
        }
    };
    Ok(SignResolution { expression: e.clone(), interval: w.clone(), verdict })
}
