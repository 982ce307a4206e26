//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Coefficients are stored in ascending degree with no trailing zeros, so the
/// zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds a polynomial from coefficients listed highest degree first.
    pub fn from_descending(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// Non-negative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Divides out the (positive) content without touching the sign.
    pub fn content_reduced(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Sign of `p(x)` computed without leaving the integers: for `x = a/b`
    /// with `b > 0`, `b^d p(a/b)` has the same sign.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let (a, b) = (x.numer(), x.denom());
        // Horner on the homogenised form: acc = sum c_i a^i b^(d-i).
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        acc.sign_ordering()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Pseudo-division: returns `(m, q, r)` with `m * self = q * d + r`,
    /// `m = lc(d)^(deg self - deg d + 1)` and `deg r < deg d`.
    pub fn pseudo_div_rem(&self, d: &Self) -> (BigInt, Self, Self) {
        let dd = d.degree().expect("pseudo-division by the zero polynomial");
        let lc = d.leading().unwrap().clone();
        let n = match self.degree() {
            Some(n) if n >= dd => n,
            _ => return (BigInt::one(), Self::zero(), self.clone()),
        };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        let mut mult = BigInt::one();
        for k in (0..=n - dd).rev() {
            let top = rem[k + dd].clone();
            for c in quot.iter_mut() {
                *c *= &lc;
            }
            for c in rem.iter_mut() {
                *c *= &lc;
            }
            mult *= &lc;
            quot[k] += &top;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &top * dc;
            }
            debug_assert!(rem[k + dd].is_zero());
        }
        rem.truncate(dd);
        (mult, Self::new(quot), Self::new(rem))
    }

    pub fn pseudo_rem(&self, d: &Self) -> Self {
        self.pseudo_div_rem(d).2
    }

    /// Exact quotient over the integers, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.degree().unwrap();
        if n < dd {
            return None;
        }
        let lc = d.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let (qk, r) = rem[k + dd].div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &qk * dc;
            }
            quot[k] = qk;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    /// Primitive greatest common divisor (positive leading coefficient),
    /// computed with the primitive polynomial remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.is_constant() {
                return Self::one();
            }
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b;
            }
            a = b;
            b = r.primitive();
        }
    }

    /// Primitive squarefree part `p / gcd(p, p')`.
    pub fn squarefree(&self) -> Self {
        if self.is_constant() {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.primitive().div_exact(&g).expect("gcd divides its argument").primitive()
    }

    /// Rational roots found by the rational root test. Polynomials with
    /// enormous constant or leading terms are skipped and report no roots.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut roots = Vec::new();
        let Some(mut p) = (!self.is_zero()).then(|| self.primitive()) else {
            return roots;
        };
        if p.coeffs.first().is_some_and(Zero::is_zero) {
            roots.push(Rational::zero());
            let skip = p.coeffs.iter().take_while(|c| c.is_zero()).count();
            p = Self::new(p.coeffs[skip..].to_vec());
        }
        if p.is_constant() {
            return roots;
        }
        let (Some(a0), Some(an)) = (p.coeffs[0].abs().to_u64(), p.leading().unwrap().abs().to_u64()) else {
            return roots;
        };
        if a0 > 1_000_000_000_000 || an > 1_000_000_000_000 {
            return roots;
        }
        let mut cands: Vec<Rational> = Vec::new();
        for num in divisors(a0) {
            for den in divisors(an) {
                for s in [1i64, -1] {
                    let r = Rational::new(BigInt::from(num) * s, BigInt::from(den));
                    if !cands.contains(&r) {
                        cands.push(r);
                    }
                }
            }
        }
        for r in cands {
            if p.sign_at(&r) == Ordering::Equal {
                roots.push(r);
            }
        }
        roots.sort();
        roots
    }

    /// Removes every linear factor with a rational root (once; callers pass
    /// squarefree input) and returns the primitive remainder.
    pub fn without_rational_roots(&self) -> Self {
        let mut p = self.primitive();
        for r in self.rational_roots() {
            let lin = Self::new(vec![-r.numer().clone(), r.denom().clone()]);
            while let Some(qt) = p.div_exact(&lin) {
                p = qt;
                if p.is_constant() {
                    break;
                }
            }
        }
        p.primitive()
    }

    /// True if the two polynomials agree up to a non-zero rational factor.
    pub fn same_up_to_content(&self, other: &Self) -> bool {
        self.primitive() == other.primitive()
    }

    /// Comma-separated ascending coefficients, e.g. `-1,-1,1` for x^2-x-1.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty coefficient list".into()));
        }
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("malformed coefficient {:?}", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    pub fn to_coeff_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl IntPolynomial {
    /// Conventional notation in the given variable, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if i == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{i}")),
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn display_matches_conventional_notation() {
        assert_eq!(p(&[1, -1, 0, -1, -1, 1]).to_string(), "x^5 - x^4 - x^3 - x + 1");
        assert_eq!(p(&[-1, -1, 1]).to_string(), "x^2 - x - 1");
        assert_eq!(p(&[0, 2]).to_string(), "2x");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn parse_round_trips_coefficients() {
        let q = IntPolynomial::parse("-1, -1, 1").unwrap();
        assert_eq!(q, p(&[-1, -1, 1]));
        assert_eq!(q.to_coeff_string(), "-1,-1,1");
        assert!(IntPolynomial::parse("1,x,2").is_err());
        assert!(IntPolynomial::parse("").is_err());
    }

    #[test]
    fn pseudo_division_identity() {
        let a = p(&[3, -2, 5, 7, -1]);
        let d = p(&[1, 0, 3]);
        let (m, q, r) = a.pseudo_div_rem(&d);
        assert_eq!(&a.scale(&m), &(&(&q * &d) + &r));
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let f = p(&[-1, -1, 1]);
        let a = &f * &p(&[2, 0, 1]);
        let b = &f * &p(&[-3, 1]);
        assert_eq!(a.gcd(&b), f);
        assert_eq!(p(&[1, 1]).gcd(&p(&[-1, 1])), IntPolynomial::one());
    }

    #[test]
    fn squarefree_drops_repeated_factors() {
        let f = &(&p(&[1, 1]) * &p(&[1, 1])) * &p(&[-2, 0, 1]);
        assert_eq!(f.squarefree(), &p(&[1, 1]) * &p(&[-2, 0, 1]));
    }

    #[test]
    fn rational_roots_and_stripping() {
        // (x - 1)(x + 1)(x^3 - x^2 - 1)
        let f = &p(&[-1, 0, 1]) * &p(&[-1, 0, -1, 1]);
        let roots = f.rational_roots();
        assert_eq!(roots, vec![Rational::from_integer((-1).into()), Rational::from_integer(1.into())]);
        assert_eq!(f.without_rational_roots(), p(&[-1, 0, -1, 1]));
        let half = p(&[-1, 2]);
        assert_eq!(half.rational_roots(), vec![Rational::new(1.into(), 2.into())]);
    }

    #[test]
    fn sign_at_agrees_with_eval() {
        let f = p(&[1, -1, 0, -1, -1, 1]);
        for (a, b) in [(17, 10), (-3, 7), (0, 1), (5, 3)] {
            let x = Rational::new(a.into(), b.into());
            assert_eq!(f.sign_at(&x), f.eval(&x).cmp(&Rational::zero()));
        }
    }

    #[test]
    fn div_exact_rejects_non_divisors() {
        let f = p(&[-1, 0, 1]);
        assert_eq!(f.div_exact(&p(&[-1, 1])), Some(p(&[1, 1])));
        assert_eq!(f.div_exact(&p(&[1, 2])), None);
    }
}
