//! Exact arithmetic: rationals, integer polynomials, Sturm root isolation,
//! real algebraic numbers and arithmetic in a field generated by one of them.

mod algebraic;
mod field;
mod poly;
mod qpoly;
mod roots;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub use algebraic::AlgebraicReal;
pub use field::{QField, QFieldElement};
pub use poly::IntPolynomial;
pub use qpoly::QPoly;
pub use roots::{count_roots_closed, isolate_real_roots, SturmSequence};

use crate::error::{Error, Result};

/// Canonical arbitrary-precision rational (denominator positive, reduced).
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"3"`, `"-7/5"` or a decimal literal such as `"1.619"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty()
        || !ip.chars().all(|c| c.is_ascii_digit())
        || !fp.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{ip}{fp}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let d = num_traits::pow(BigInt::from(10), fp.len());
    let r = Rational::new(n, d);
    Ok(if neg { -r } else { r })
}

/// Parses an interval written `"lo,hi"`.
pub fn parse_interval(s: &str) -> Result<(Rational, Rational)> {
    let (a, b) = s.split_once(',').ok_or_else(|| Error::Parse(format!("interval {s:?} must be written lo,hi")))?;
    let (lo, hi) = (parse_rational(a)?, parse_rational(b)?);
    if lo > hi {
        return Err(Error::EmptyWindow { lo: lo.to_string(), hi: hi.to_string() });
    }
    Ok((lo, hi))
}

fn pow10(digits: usize) -> BigInt {
    num_traits::pow(BigInt::from(10), digits)
}

/// Formats the integer `n` scaled by `10^-digits`.
fn format_scaled(n: &BigInt, digits: usize) -> String {
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
    let (ip, fp) = s.split_at(s.len() - digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{fp}")
    }
}

/// Round-half-even decimal rendering of an exact rational.
pub fn rational_to_digits(r: &Rational, digits: usize) -> String {
    let scaled = r * Rational::from_integer(pow10(digits));
    let fl = scaled.floor();
    let frac = &scaled - &fl;
    let half = rat(1, 2);
    let mut n = fl.to_integer();
    match frac.cmp(&half) {
        Ordering::Greater => n += 1,
        Ordering::Equal if n.is_odd() => n += 1,
        _ => {}
    }
    format_scaled(&n, digits)
}

/// If every point of the open interval `(lo, hi)` rounds to the same
/// `digits`-place decimal, returns it. Endpoints may sit on a rounding
/// boundary since the value is known to be strictly inside.
pub(crate) fn common_rounding(lo: &Rational, hi: &Rational, digits: usize) -> Option<String> {
    let s = Rational::from_integer(pow10(digits));
    let half = rat(1, 2);
    let a = (lo * &s + &half).floor().to_integer();
    let b = (hi * &s - &half).ceil().to_integer();
    (a == b).then(|| format_scaled(&a, digits))
}

/// Anything that can take part in an exact comparison.
#[derive(Clone, Debug)]
pub enum ExactValue {
    Rational(Rational),
    Algebraic(AlgebraicReal),
    Field(QFieldElement),
}

/// Exact three-way comparison of mixed exact values. Two field elements
/// must share a generator; a field element and an algebraic real are
/// compared by treating the algebraic real as an element if it is the
/// generator itself and by refinement otherwise.
pub fn compare(a: &ExactValue, b: &ExactValue) -> Result<Ordering> {
    use ExactValue::*;
    Ok(match (a, b) {
        (Rational(x), Rational(y)) => x.cmp(y),
        (Algebraic(x), Rational(y)) => x.cmp_rational(y),
        (Rational(x), Algebraic(y)) => y.cmp_rational(x).reverse(),
        (Algebraic(x), Algebraic(y)) => x.cmp_algebraic(y),
        (Field(x), Rational(y)) => x.cmp_rational(y),
        (Rational(x), Field(y)) => y.cmp_rational(x).reverse(),
        (Field(x), Field(y)) => x.cmp_element(y)?,
        (Field(x), Algebraic(y)) => x.cmp_algebraic(y),
        (Algebraic(x), Field(y)) => y.cmp_algebraic(x).reverse(),
    })
}
