//! Arithmetic in Q(q) for a single real algebraic generator q.
//!
//! Elements are stored as `num(q) / den` with `num` reduced modulo a
//! polynomial known to vanish at q. That polynomial starts as the
//! generator's squarefree defining polynomial and may shrink: whenever a
//! gcd computation exposes a nontrivial factor, the factor that keeps q as
//! a root replaces it. No factorisation is ever attempted.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{common_rounding, rational_to_digits, AlgebraicReal, IntPolynomial, QPoly, Rational};
use crate::error::{Error, Result};

pub struct QField {
    generator: AlgebraicReal,
    modulus: RwLock<IntPolynomial>,
    /// Fixed-point generator brackets `(bits, lo, hi)` scaled by `2^(bits+16)`.
    fixed: RwLock<Vec<(u32, BigInt, BigInt)>>,
}

impl QField {
    pub fn new(generator: AlgebraicReal) -> Arc<Self> {
        let modulus = match generator.exact() {
            Some(r) => IntPolynomial::new(vec![-r.numer().clone(), r.denom().clone()]),
            None => generator.defining().without_rational_roots(),
        };
        Arc::new(QField { generator, modulus: RwLock::new(modulus), fixed: RwLock::new(Vec::new()) })
    }

    pub fn generator(&self) -> &AlgebraicReal {
        &self.generator
    }

    /// Current polynomial used for reduction; always vanishes at the generator.
    pub fn modulus(&self) -> IntPolynomial {
        self.modulus.read().unwrap().clone()
    }

    /// Generator bracket of width at most `2^-bits`, as integers scaled by
    /// `2^(bits+16)` and rounded outward.
    fn generator_fixed(&self, bits: u32) -> (BigInt, BigInt) {
        if let Some((_, l, h)) = self.fixed.read().unwrap().iter().find(|e| e.0 == bits) {
            return (l.clone(), h.clone());
        }
        let g = &self.generator;
        g.refine_to_width(&Rational::new(BigInt::one(), BigInt::one() << bits));
        let (glo, ghi) = g.interval();
        let scale = Rational::from_integer(BigInt::one() << (bits + 16));
        let gl = (&glo * &scale).floor().to_integer();
        let gh = (&ghi * &scale).ceil().to_integer();
        self.fixed.write().unwrap().push((bits, gl.clone(), gh.clone()));
        (gl, gh)
    }

    /// Replaces the modulus by whichever of `g` or `modulus / g` keeps the
    /// generator as a root, `g` being a nontrivial divisor. Returns true if
    /// the generator is a root of `g`.
    fn split(&self, g: &IntPolynomial) -> bool {
        let mut m = self.modulus.write().unwrap();
        let g = g.primitive();
        if g.is_constant() || g.degree() >= m.degree() {
            return self.generator.is_root_of(&g);
        }
        if self.generator.is_root_of(&g) {
            *m = g;
            true
        } else {
            if let Some(q) = m.div_exact(&g) {
                *m = q.primitive();
            }
            false
        }
    }

    pub fn zero(self: &Arc<Self>) -> QFieldElement {
        self.from_int(0)
    }

    pub fn one(self: &Arc<Self>) -> QFieldElement {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> QFieldElement {
        self.from_rational(&Rational::from_integer(n.into()))
    }

    pub fn from_rational(self: &Arc<Self>, r: &Rational) -> QFieldElement {
        QFieldElement { field: self.clone(), num: IntPolynomial::constant(r.numer().clone()), den: r.denom().clone() }
    }

    /// The generator q itself.
    pub fn gen(self: &Arc<Self>) -> QFieldElement {
        self.from_poly(&IntPolynomial::x())
    }

    pub fn from_poly(self: &Arc<Self>, p: &IntPolynomial) -> QFieldElement {
        QFieldElement::reduced(self, QPoly::from(p))
    }

    /// `q^k` for any integer k; negative powers use the inverse of q.
    pub fn gen_pow(self: &Arc<Self>, k: i64) -> Result<QFieldElement> {
        let e = self.from_poly(&IntPolynomial::monomial(BigInt::one(), k.unsigned_abs() as usize));
        if k >= 0 {
            Ok(e)
        } else {
            e.inverse()
        }
    }

    /// `num(q) / den(q)`.
    pub fn from_fraction(self: &Arc<Self>, num: &IntPolynomial, den: &IntPolynomial) -> Result<QFieldElement> {
        self.from_poly(num).div(&self.from_poly(den))
    }
}

impl fmt::Debug for QField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QField({:?})", self.generator)
    }
}

#[derive(Clone)]
pub struct QFieldElement {
    field: Arc<QField>,
    num: IntPolynomial,
    den: BigInt,
}

impl QFieldElement {
    fn reduced(field: &Arc<QField>, p: QPoly) -> Self {
        let m = QPoly::from(&field.modulus());
        let (num, den) = p.rem(&m).to_int();
        let den = if num.is_zero() { BigInt::one() } else { den };
        QFieldElement { field: field.clone(), num, den }
    }

    /// `num(q) / den` from integer parts: pseudo-reduces `num` modulo the
    /// modulus when needed, then removes common content so the result is
    /// canonical.
    fn from_parts(field: &Arc<QField>, num: IntPolynomial, den: BigInt) -> Self {
        let m = field.modulus();
        let (num, den) = if num.degree() >= m.degree() {
            let (mult, _, r) = num.pseudo_div_rem(&m);
            (r, den * mult)
        } else {
            (num, den)
        };
        if num.is_zero() {
            return QFieldElement { field: field.clone(), num, den: BigInt::one() };
        }
        let mut g = num.content().gcd(&den);
        if den.is_negative() {
            g = -g;
        }
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (IntPolynomial::new(num.coeffs().iter().map(|c| c / &g).collect()), den / g)
        };
        QFieldElement { field: field.clone(), num, den }
    }

    fn as_qpoly(&self) -> QPoly {
        QPoly::from(&self.num).scale(&Rational::new(BigInt::one(), self.den.clone()))
    }

    pub fn field(&self) -> &Arc<QField> {
        &self.field
    }

    pub fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field)
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::IncompatibleGenerators)
        }
    }

    /// Numerator polynomial in q and positive integer denominator.
    pub fn parts(&self) -> (&IntPolynomial, &BigInt) {
        (&self.num, &self.den)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let num = &self.num.scale(&other.den) + &other.num.scale(&self.den);
        Ok(Self::from_parts(&self.field, num, &self.den * &other.den))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let num = &self.num.scale(&other.den) - &other.num.scale(&self.den);
        Ok(Self::from_parts(&self.field, num, &self.den * &other.den))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(Self::from_parts(&self.field, &self.num * &other.num, &self.den * &other.den))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        self.try_mul(&other.inverse()?)
    }

    pub fn inverse(&self) -> Result<Self> {
        loop {
            if self.num.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let m = self.field.modulus();
            let (g, s, _) = QPoly::ext_gcd(&QPoly::from(&self.num), &QPoly::from(&m));
            if g.degree() == Some(0) {
                let s = s.scale(&Rational::from_integer(self.den.clone()));
                return Ok(Self::reduced(&self.field, s));
            }
            if self.field.split(&g.to_int().0) {
                return Err(Error::DivisionByZero);
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::from_parts(&self.field, self.num.scale(r.numer()), &self.den * r.denom())
    }

    pub fn mul_int(&self, n: i64) -> Self {
        self.scale(&Rational::from_integer(n.into()))
    }

    /// Exact zero test, splitting the modulus when the numerator shares a
    /// factor with it.
    pub fn is_zero(&self) -> bool {
        if self.num.is_zero() {
            return true;
        }
        if self.sign_at(32).is_some() {
            return false;
        }
        let m = self.field.modulus();
        let g = self.num.gcd(&m);
        if g.is_constant() {
            return false;
        }
        self.field.split(&g)
    }

    /// The element as a rational number, when its reduced form is constant.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num.degree().unwrap_or(0) == 0 {
            return Some(Rational::new(self.num.coeff(0), self.den.clone()));
        }
        let r = Self::reduced(&self.field, self.as_qpoly());
        (r.num.degree().unwrap_or(0) == 0).then(|| Rational::new(r.num.coeff(0), r.den))
    }

    /// Closed interval containing the value, computed by interval Horner
    /// evaluation in fixed point after refining the generator to width
    /// `2^-bits`.
    pub fn enclosure(&self, bits: u32) -> (Rational, Rational) {
        let (lo, hi) = self.enclosure_fixed(bits);
        let d = &self.den << (bits + 16);
        (Rational::new(lo, d.clone()), Rational::new(hi, d))
    }

    /// Enclosure of `num(q)` scaled by `2^(bits+16)`; the value is this
    /// divided by the positive `den`.
    fn enclosure_fixed(&self, bits: u32) -> (BigInt, BigInt) {
        let (gl, gh) = self.field.generator_fixed(bits);
        let prec = bits + 16;
        // Shifting a BigInt right rounds toward negative infinity.
        let down = |x: BigInt| x >> prec;
        let up = |x: BigInt| -((-x) >> prec);
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for c in self.num.coeffs().iter().rev() {
            let ps = [&lo * &gl, &lo * &gh, &hi * &gl, &hi * &gh];
            let c = c << prec;
            lo = down(ps.iter().min().unwrap().clone()) + &c;
            hi = up(ps.iter().max().unwrap().clone()) + c;
        }
        (lo, hi)
    }

    /// Some(sign) when an enclosure at `bits` excludes zero.
    fn sign_at(&self, bits: u32) -> Option<Ordering> {
        let (lo, hi) = self.enclosure_fixed(bits);
        if lo.is_positive() {
            Some(Ordering::Greater)
        } else if hi.is_negative() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    pub fn signum(&self) -> Ordering {
        if self.num.degree().unwrap_or(0) == 0 {
            return self.num.coeff(0).cmp(&BigInt::zero());
        }
        // A cheap enclosure settles most signs before any exact test.
        if let Some(o) = self.sign_at(32) {
            return o;
        }
        if let Some(r) = self.as_rational() {
            return r.cmp(&Rational::zero());
        }
        if self.is_zero() {
            return Ordering::Equal;
        }
        let mut bits = 64;
        loop {
            if let Some(o) = self.sign_at(bits) {
                return o;
            }
            bits *= 2;
        }
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        (self - &self.field.from_rational(r)).signum()
    }

    pub fn cmp_element(&self, other: &Self) -> Result<Ordering> {
        Ok(self.try_sub(other)?.signum())
    }

    pub fn eq_element(&self, other: &Self) -> Result<bool> {
        Ok(self.try_sub(other)?.is_zero())
    }

    /// `p(self)` evaluated inside the field.
    pub fn eval_poly(&self, p: &IntPolynomial) -> Self {
        let mut acc = self.field.zero();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &self.field.from_rational(&Rational::from_integer(c.clone()));
        }
        acc
    }

    /// Exact comparison against an arbitrary real algebraic number.
    pub fn cmp_algebraic(&self, a: &AlgebraicReal) -> Ordering {
        if let Some(r) = a.exact() {
            return self.cmp_rational(&r);
        }
        if a.ptr_eq(&self.field.generator) {
            return self.cmp_element(&self.field.gen()).unwrap();
        }
        // Equal exactly when self is a root of a's polynomial and no other
        // root of it lies near both.
        let sturm = self.eval_poly(a.defining()).is_zero().then(|| super::SturmSequence::new(a.defining()));
        let mut bits = 32;
        loop {
            let (lo, hi) = self.enclosure(bits);
            a.refine_to_width(&Rational::new(BigInt::one(), BigInt::one() << bits));
            let (alo, ahi) = a.interval();
            if hi < alo {
                return Ordering::Less;
            }
            if lo > ahi {
                return Ordering::Greater;
            }
            if let Some(st) = &sturm {
                if st.count_closed(&lo.clone().min(alo), &hi.clone().max(ahi)) == 1 {
                    return Ordering::Equal;
                }
            }
            bits *= 2;
        }
    }

    /// Round-half-even decimal with error below half a unit in the last place.
    pub fn refine_to_digits(&self, digits: usize) -> String {
        if let Some(r) = self.as_rational() {
            return rational_to_digits(&r, digits);
        }
        let scale = Rational::from_integer(num_traits::pow(BigInt::from(10), digits));
        let half = Rational::new(1.into(), 2.into());
        let on_boundary = |e: &Rational| (e * &scale - &half).is_integer();
        let mut bits = 32;
        loop {
            let (lo, hi) = self.enclosure(bits);
            if let Some(s) = common_rounding(&lo, &hi, digits) {
                // The enclosure is closed, so an endpoint on a rounding
                // boundary might be the value itself.
                for e in [&lo, &hi] {
                    if on_boundary(e) && self.cmp_rational(e) == Ordering::Equal {
                        return rational_to_digits(e, digits);
                    }
                }
                return s;
            }
            if bits >= 512 {
                let mid = (&lo + &hi) / Rational::from_integer(2.into());
                let h = ((&mid * &scale).floor() + &half) / &scale;
                if self.cmp_rational(&h) == Ordering::Equal {
                    return rational_to_digits(&h, digits);
                }
            }
            bits *= 2;
        }
    }

    /// Representation reduced modulo the current modulus, suitable as a
    /// hash key. Equal elements map to equal keys once the modulus is
    /// irreducible.
    pub fn canonical_key(&self) -> (Vec<BigInt>, BigInt) {
        let r = Self::reduced(&self.field, self.as_qpoly());
        (r.num.coeffs().to_vec(), r.den)
    }

    /// `num/den` in the comma-separated coefficient format, in q.
    pub fn to_exact_string(&self) -> String {
        format!("{}/{}", self.num.to_coeff_string(), self.den)
    }

    /// Human-readable form such as `(q^2 - 1)/3`.
    pub fn to_pretty(&self) -> String {
        let n = self.num.display_in("q");
        if self.den.is_one() {
            n
        } else if self.num.coeffs().len() <= 1 {
            format!("{n}/{}", self.den)
        } else {
            format!("({n})/{}", self.den)
        }
    }
}

impl PartialEq for QFieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.eq_element(other).unwrap_or(false)
    }
}

impl Eq for QFieldElement {}

impl Hash for QFieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical_key().hash(state);
    }
}

impl fmt::Debug for QFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QFieldElement({})", self.to_pretty())
    }
}

impl fmt::Display for QFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.refine_to_digits(f.precision().unwrap_or(5)))
    }
}

// Operator forms panic on mismatched generators; the `try_` methods report it.
macro_rules! binop {
    ($tr:ident $m:ident $try:ident) => {
        impl $tr for &QFieldElement {
            type Output = QFieldElement;
            fn $m(self, rhs: &QFieldElement) -> QFieldElement {
                self.$try(rhs).expect("field elements over different generators")
            }
        }
        impl $tr for QFieldElement {
            type Output = QFieldElement;
            fn $m(self, rhs: QFieldElement) -> QFieldElement {
                (&self).$m(&rhs)
            }
        }
    };
}
binop!(Add add try_add);
binop!(Sub sub try_sub);
binop!(Mul mul try_mul);

impl Neg for &QFieldElement {
    type Output = QFieldElement;
    fn neg(self) -> QFieldElement {
        QFieldElement { field: self.field.clone(), num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for QFieldElement {
    type Output = QFieldElement;
    fn neg(self) -> QFieldElement {
        -&self
    }
}
