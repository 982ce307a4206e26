//! Exact extremal values of digit series `sum_{i>=1} d_i b^(-n-i)` with
//! `d_i` in {0, 1}, for a real algebraic `b` with `|b| > 1`.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::{int, AlgebraicReal, QField, QFieldElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremum {
    Sup,
    Inf,
}

#[derive(Clone, Debug)]
pub struct SeriesBound {
    pub base: AlgebraicReal,
    /// The series starts at `b^(-offset-1)`.
    pub offset: usize,
    pub extremum: Extremum,
    pub value: QFieldElement,
}

/// Fails unless `|b| > 1`.
pub fn check_modulus(b: &AlgebraicReal) -> Result<()> {
    if b.cmp_rational(&int(-1)) == Ordering::Less || b.cmp_rational(&int(1)) == Ordering::Greater {
        Ok(())
    } else {
        Err(Error::ConjugatePrecondition(format!("|{}| <= 1", b.refine_to_digits(5))))
    }
}

impl SeriesBound {
    /// For `b < -1` the positive terms sit at even positions, giving
    /// `Sup = 1/(b^2-1)` and `Inf = b/(b^2-1)` at offset 0; for `b > 1`,
    /// `Sup = 1/(b-1)` and `Inf = 0`. An offset multiplies by `b^(-n)`,
    /// which swaps the two when it is negative.
    pub fn new(field: &Arc<QField>, offset: usize, extremum: Extremum) -> Result<Self> {
        let base = field.generator().clone();
        check_modulus(&base)?;
        let b = field.gen();
        let one = field.one();
        let (sup, inf) = if base.signum() == Ordering::Less {
            let d = &(&b * &b) - &one;
            (one.div(&d)?, b.div(&d)?)
        } else {
            (one.div(&(&b - &one))?, field.zero())
        };
        let scale = field.gen_pow(-(offset as i64))?;
        let (sup, inf) = (&sup * &scale, &inf * &scale);
        let (sup, inf) = if scale.signum() == Ordering::Less { (inf, sup) } else { (sup, inf) };
        let value = match extremum {
            Extremum::Sup => sup,
            Extremum::Inf => inf,
        };
        Ok(SeriesBound { base, offset, extremum, value })
    }
}

/// `sum_i w_i b^(-offset-i)` for a finite digit word.
pub fn finite_sum(field: &Arc<QField>, offset: usize, word: &[u8]) -> Result<QFieldElement> {
    let inv = field.gen_pow(-1)?;
    let mut p = field.gen_pow(-(offset as i64))?;
    let mut acc = field.zero();
    for &d in word {
        p = &p * &inv;
        if d == 1 {
            acc = &acc + &p;
        }
    }
    Ok(acc)
}
