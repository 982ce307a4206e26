//! Points of `[0, 1/(q-1)]`, the digit maps and region geometry.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::{Base, EventuallyPeriodic};
use crate::error::{Error, Result};
use crate::exactnum::{IntPolynomial, QFieldElement};
use crate::symbolic::RationalFunction;

/// An exact point together with a human-readable description of where it
/// came from.
#[derive(Clone)]
pub struct PointSpec {
    pub value: QFieldElement,
    pub provenance: String,
}

impl PointSpec {
    /// Fails unless `0 <= value <= 1/(q-1)`.
    pub fn new(base: &Base, value: QFieldElement, provenance: impl Into<String>) -> Result<Self> {
        if value.signum() == Ordering::Less || value.cmp_element(base.top())? == Ordering::Greater {
            return Err(Error::OutsideUnitInterval(value.refine_to_digits(5)));
        }
        Ok(PointSpec { value, provenance: provenance.into() })
    }

    pub fn zero(base: &Base) -> Self {
        PointSpec { value: base.zero(), provenance: "0".into() }
    }

    pub fn one(base: &Base) -> Self {
        PointSpec { value: base.one(), provenance: "1".into() }
    }

    pub fn decimal(&self, digits: usize) -> String {
        self.value.refine_to_digits(digits)
    }

    pub fn same_value(&self, other: &PointSpec) -> bool {
        self.value == other.value
    }
}

impl fmt::Debug for PointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSpec({} = {})", self.provenance, self.value.to_pretty())
    }
}

/// Wraps a provenance string so that map applications read naturally.
fn applied(map: &str, inner: &str) -> String {
    format!("{map}({inner})")
}

/// `T_0(x) = qx` (needs `x <= 1/(q^2-q)`) or `T_1(x) = qx - 1` (needs `x >= 1/q`).
pub fn t_apply(x: &PointSpec, digit: u8, base: &Base) -> Result<PointSpec> {
    let v = &x.value;
    let value = match digit {
        0 => {
            if v.cmp_element(base.s_right())? == Ordering::Greater {
                return Err(Error::MapNotApplicable { digit: 0, bound: "x <= 1/(q^2-q)" });
            }
            v * &base.gen()
        }
        1 => {
            if v.cmp_element(base.inv_q())? == Ordering::Less {
                return Err(Error::MapNotApplicable { digit: 1, bound: "x >= 1/q" });
            }
            &(v * &base.gen()) - &base.one()
        }
        _ => return Err(Error::Parse(format!("digit {digit} is not 0 or 1"))),
    };
    Ok(PointSpec { value, provenance: applied(&format!("T{digit}"), &x.provenance) })
}

/// Applies maps left to right: `word[0]` first.
pub fn t_apply_word(x: &PointSpec, word: &[u8], base: &Base) -> Result<PointSpec> {
    word.iter().try_fold(x.clone(), |p, &d| t_apply(&p, d, base))
}

/// `x -> 1/(q-1) - x`, which exchanges the roles of the two maps.
pub fn reflect(x: &PointSpec, base: &Base) -> PointSpec {
    PointSpec { value: base.top() - &x.value, provenance: format!("1/(q-1) - {}", x.provenance) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionTag {
    /// `[0, 1/q)`
    L,
    /// `[1/q, (q+q^2)/(q^4-1))`
    SJL,
    /// `[(q+q^2)/(q^4-1), (1+q^3)/(q^4-1)]`
    J,
    /// `((1+q^3)/(q^4-1), 1/(q^2-q)]`
    SJR,
    /// `(1/(q^2-q), 1/(q-1)]`
    R,
}

impl RegionTag {
    pub fn name(self) -> &'static str {
        match self {
            RegionTag::L => "L",
            RegionTag::SJL => "SJL",
            RegionTag::J => "J",
            RegionTag::SJR => "SJR",
            RegionTag::R => "R",
        }
    }
}

/// Region of a point, with flags for sitting exactly on the closed end of
/// the containing piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Region {
    pub tag: RegionTag,
    pub on_left_edge: bool,
    pub on_right_edge: bool,
}

impl Region {
    /// In the switch region `[1/q, 1/(q^2-q)]`.
    pub fn in_switch(&self) -> bool {
        matches!(self.tag, RegionTag::SJL | RegionTag::J | RegionTag::SJR)
    }

    pub fn describe(&self) -> String {
        let mut s = self.tag.name().to_string();
        if self.on_left_edge {
            s.push_str(" (left edge)");
        }
        if self.on_right_edge {
            s.push_str(" (right edge)");
        }
        s
    }
}

pub fn region_of(x: &QFieldElement, base: &Base) -> Result<Region> {
    let z = x.signum();
    let top = x.cmp_element(base.top())?;
    if z == Ordering::Less || top == Ordering::Greater {
        return Err(Error::OutsideUnitInterval(x.refine_to_digits(5)));
    }
    let region = |tag, l: bool, r: bool| Region { tag, on_left_edge: l, on_right_edge: r };
    let ci = x.cmp_element(base.inv_q())?;
    if ci == Ordering::Less {
        return Ok(region(RegionTag::L, z == Ordering::Equal, false));
    }
    let cjl = x.cmp_element(base.j_left())?;
    if cjl == Ordering::Less {
        return Ok(region(RegionTag::SJL, ci == Ordering::Equal, false));
    }
    let cjr = x.cmp_element(base.j_right())?;
    if cjr != Ordering::Greater {
        return Ok(region(RegionTag::J, cjl == Ordering::Equal, cjr == Ordering::Equal));
    }
    let cs = x.cmp_element(base.s_right())?;
    if cs != Ordering::Greater {
        return Ok(region(RegionTag::SJR, false, cs == Ordering::Equal));
    }
    Ok(region(RegionTag::R, false, top == Ordering::Equal))
}

/// `1/q <= x <= 1/(q^2-q)`.
pub fn in_switch(x: &QFieldElement, base: &Base) -> Result<bool> {
    Ok(x.cmp_element(base.inv_q())? != Ordering::Less && x.cmp_element(base.s_right())? != Ordering::Greater)
}

/// `(q+q^2)/(q^4-1) <= x <= (1+q^3)/(q^4-1)`.
pub fn in_j(x: &QFieldElement, base: &Base) -> Result<bool> {
    Ok(x.cmp_element(base.j_left())? != Ordering::Less && x.cmp_element(base.j_right())? != Ordering::Greater)
}

/// `sum d_i q^{n-i}` for a digit string of length n.
fn digits_poly(w: &[u8]) -> IntPolynomial {
    let n = w.len();
    IntPolynomial::new((0..n).map(|k| BigInt::from(w[n - 1 - k])).collect())
}

/// Closed form of the value of an eventually periodic word as a rational
/// function of q: with `A` the preperiod polynomial, `P` the period
/// polynomial, `n`, `p` the lengths, the value is
/// `(A (q^p - 1) + P) / (q^n (q^p - 1))`.
pub fn pi_rf(w: &EventuallyPeriodic) -> RationalFunction {
    let n = w.preperiod().len();
    let p = w.period().len();
    let qp1 = &IntPolynomial::monomial(BigInt::one(), p) - &IntPolynomial::one();
    let num = &(&digits_poly(w.preperiod()) * &qp1) + &digits_poly(w.period());
    let den = &IntPolynomial::monomial(BigInt::one(), n) * &qp1;
    RationalFunction::new(num, den).expect("q^p - 1 is nonzero")
}

/// Exact value of an eventually periodic expansion in base q.
pub fn pi_value(w: &EventuallyPeriodic, base: &Base) -> QFieldElement {
    base.element(&pi_rf(w)).expect("q is not a root of unity")
}

fn y_word(j: usize) -> EventuallyPeriodic {
    let mut pre = vec![0];
    pre.extend(std::iter::repeat_n(1, j));
    EventuallyPeriodic::new(pre, vec![1, 0]).unwrap()
}

fn z_word(j: usize) -> EventuallyPeriodic {
    let mut pre = vec![1];
    pre.extend(std::iter::repeat_n(0, j));
    EventuallyPeriodic::new(pre, vec![0, 1]).unwrap()
}

/// `y_j = value of 0 1^j (10)^inf`.
pub fn y_rf(j: usize) -> RationalFunction {
    pi_rf(&y_word(j))
}

/// `z_j = value of 1 0^j (01)^inf`.
pub fn z_rf(j: usize) -> RationalFunction {
    pi_rf(&z_word(j))
}

pub fn make_y(j: usize, base: &Base) -> PointSpec {
    assert!(j >= 1, "y_j needs j >= 1");
    PointSpec { value: pi_value(&y_word(j), base), provenance: format!("y{j}") }
}

pub fn make_z(j: usize, base: &Base) -> PointSpec {
    assert!(j >= 1, "z_j needs j >= 1");
    PointSpec { value: pi_value(&z_word(j), base), provenance: format!("z{j}") }
}
