//! Points with a unique expansion, greedy and lazy expansions, and the
//! special points `y_j`, `z_j` of the switch region.

use std::cmp::Ordering;
use std::fmt;

use super::{in_switch, t_apply, Base, DigitWord, EventuallyPeriodic, PointSpec};
use crate::error::Result;
use crate::exactnum::QFieldElement;

/// For q strictly between the golden ratio and q_f, the points with a
/// unique expansion are 0, 1/(q-1) and the values of `0^k (10)^inf` and
/// `1^k (10)^inf`. Returns that expansion when `x` is one of them.
pub fn unique_expansion(x: &QFieldElement, base: &Base) -> Result<Option<EventuallyPeriodic>> {
    base.check_unique_range()?;
    if x.is_zero() {
        return Ok(Some(EventuallyPeriodic::periodic(vec![0])?));
    }
    if x == base.top() {
        return Ok(Some(EventuallyPeriodic::periodic(vec![1])?));
    }
    let inv_q = base.inv_q();
    // 0^k (10)^inf decreases to 0 as k grows.
    let mut a = base.pi_10().clone();
    for k in 0.. {
        match x.cmp_element(&a)? {
            Ordering::Equal => return Ok(Some(EventuallyPeriodic::new(vec![0; k], vec![1, 0])?)),
            Ordering::Greater => break,
            Ordering::Less => a = &a * inv_q,
        }
    }
    // 1^k (10)^inf increases to 1/(q-1): b_k = top - q^-k (top - pi_10).
    let gap0 = base.top() - base.pi_10();
    let mut gap = gap0;
    for k in 0.. {
        let b = base.top() - &gap;
        match x.cmp_element(&b)? {
            Ordering::Equal => return Ok(Some(EventuallyPeriodic::new(vec![1; k], vec![1, 0])?)),
            Ordering::Less => break,
            Ordering::Greater => gap = &gap * inv_q,
        }
    }
    Ok(None)
}

pub fn uq_membership(x: &PointSpec, base: &Base) -> Result<bool> {
    Ok(unique_expansion(&x.value, base)?.is_some())
}

/// Picks digit 1 whenever `T_1` applies.
pub fn greedy_expansion(x: &PointSpec, base: &Base, n: usize) -> Result<DigitWord> {
    let mut p = x.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let d = u8::from(p.value.cmp_element(base.inv_q())? != Ordering::Less);
        p = t_apply(&p, d, base)?;
        out.push(d);
    }
    Ok(out)
}

/// Picks digit 0 whenever `T_0` applies.
pub fn lazy_expansion(x: &PointSpec, base: &Base, n: usize) -> Result<DigitWord> {
    let mut p = x.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let d = u8::from(p.value.cmp_element(base.s_right())? == Ordering::Greater);
        p = t_apply(&p, d, base)?;
        out.push(d);
    }
    Ok(out)
}

/// The closed forms making up the switch-region points that map into the
/// unique-expansion set, for q between q1 and q3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpecialPoint {
    Y(usize),
    Z(usize),
    /// `1/q`
    InvQ,
    /// `1/(q^2 - q)`
    SRight,
}

impl fmt::Display for SpecialPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecialPoint::Y(j) => write!(f, "y{j}"),
            SpecialPoint::Z(j) => write!(f, "z{j}"),
            SpecialPoint::InvQ => f.write_str("1/q"),
            SpecialPoint::SRight => f.write_str("1/(q^2-q)"),
        }
    }
}

impl SpecialPoint {
    pub fn value(self, base: &Base) -> QFieldElement {
        match self {
            SpecialPoint::Y(j) => super::make_y(j, base).value,
            SpecialPoint::Z(j) => super::make_z(j, base).value,
            SpecialPoint::InvQ => base.inv_q().clone(),
            SpecialPoint::SRight => base.s_right().clone(),
        }
    }
}

/// Matches `x` against `1/q`, `1/(q^2-q)`, `y_j` and `z_j` (j >= 1). The
/// `y_j` increase to `1/(q^2-q)` and the `z_j` decrease to `1/q`, so the
/// scan stops as soon as it passes `x`.
pub fn identify_special(x: &QFieldElement, base: &Base) -> Result<Option<SpecialPoint>> {
    let ci = x.cmp_element(base.inv_q())?;
    let cs = x.cmp_element(base.s_right())?;
    if ci == Ordering::Equal {
        return Ok(Some(SpecialPoint::InvQ));
    }
    if cs == Ordering::Equal {
        return Ok(Some(SpecialPoint::SRight));
    }
    if ci == Ordering::Less || cs == Ordering::Greater {
        return Ok(None);
    }
    let inv_q = base.inv_q();
    // q^{-j-1}/(q^2-1) = q^{-j-2} * pi_10, starting at j = 1
    let t1 = &(&(base.pi_10() * inv_q) * inv_q) * inv_q;
    let mut t = t1.clone();
    let mut j = 1;
    loop {
        let y = base.s_right() - &t;
        match x.cmp_element(&y)? {
            Ordering::Equal => return Ok(Some(SpecialPoint::Y(j))),
            Ordering::Less => break,
            Ordering::Greater => {}
        }
        t = &t * inv_q;
        j += 1;
    }
    let mut t = t1;
    let mut j = 1;
    loop {
        let z = base.inv_q() + &t;
        match x.cmp_element(&z)? {
            Ordering::Equal => return Ok(Some(SpecialPoint::Z(j))),
            Ordering::Greater => break,
            Ordering::Less => {}
        }
        t = &t * inv_q;
        j += 1;
    }
    Ok(None)
}

/// Definitional test for `x` in the switch region with one of its two
/// images having a unique expansion.
pub fn in_switch_preimage_of_uq(x: &PointSpec, base: &Base) -> Result<bool> {
    if !in_switch(&x.value, base)? {
        return Ok(false);
    }
    for d in [0, 1] {
        if uq_membership(&t_apply(x, d, base)?, base)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::NamedConstant;
    use crate::error::Error;
    use crate::expansions::{digits_to_string, make_y, make_z, pi_value};

    #[test]
    fn unique_range_members() {
        let b = NamedConstant::Q2.base();
        assert!(uq_membership(&PointSpec::zero(b), b).unwrap());
        let x = PointSpec { value: pi_value(&"1|10".parse().unwrap(), b), provenance: "x".into() };
        assert!(uq_membership(&x, b).unwrap());
        assert!(!uq_membership(&make_y(1, b), b).unwrap());
        let w = unique_expansion(&pi_value(&"000|10".parse().unwrap(), b), b).unwrap().unwrap();
        assert_eq!(w, "000|10".parse().unwrap());
    }

    #[test]
    fn unique_range_range_enforced() {
        let g = NamedConstant::Golden.base();
        assert!(matches!(uq_membership(&PointSpec::zero(g), g), Err(Error::UniqueRangeViolation(_))));
        let f = NamedConstant::QF.base();
        assert!(matches!(uq_membership(&PointSpec::zero(f), f), Err(Error::UniqueRangeViolation(_))));
    }

    #[test]
    fn greedy_and_lazy() {
        let b = NamedConstant::Q3.base();
        let g = greedy_expansion(&PointSpec::one(b), b, 12).unwrap();
        assert_eq!(digits_to_string(&g), "110001000100");
        assert_eq!(greedy_expansion(&PointSpec::zero(b), b, 5).unwrap(), vec![0; 5]);
        let top = PointSpec { value: b.top().clone(), provenance: "top".into() };
        assert_eq!(lazy_expansion(&top, b, 5).unwrap(), vec![1; 5]);
    }

    #[test]
    fn identify_special_points() {
        let b = NamedConstant::Q1.base();
        for j in 1..=8 {
            assert_eq!(identify_special(&make_y(j, b).value, b).unwrap(), Some(SpecialPoint::Y(j)));
            assert_eq!(identify_special(&make_z(j, b).value, b).unwrap(), Some(SpecialPoint::Z(j)));
        }
        assert_eq!(identify_special(&b.one(), b).unwrap(), None);
        assert_eq!(identify_special(b.inv_q(), b).unwrap(), Some(SpecialPoint::InvQ));
    }

    #[test]
    fn special_points_map_into_uq() {
        let b = NamedConstant::Q2.base();
        for j in 1..=5 {
            assert!(in_switch_preimage_of_uq(&make_y(j, b), b).unwrap());
            assert!(in_switch_preimage_of_uq(&make_z(j, b), b).unwrap());
        }
    }
}
