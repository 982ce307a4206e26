//! Named bases between 1 and 2 and the decimals they are usually quoted with.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exactnum::{int, rat, AlgebraicReal, IntPolynomial};
use crate::expansions::Base;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedConstant {
    Golden,
    Q1,
    Q2,
    Q3,
    QPrime,
    QDoublePrime,
    Q4,
    QCheck,
    QF,
}

impl NamedConstant {
    pub const ALL: [NamedConstant; 9] = [
        NamedConstant::Golden,
        NamedConstant::Q1,
        NamedConstant::Q2,
        NamedConstant::Q3,
        NamedConstant::QPrime,
        NamedConstant::QDoublePrime,
        NamedConstant::Q4,
        NamedConstant::QCheck,
        NamedConstant::QF,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedConstant::Golden => "golden",
            NamedConstant::Q1 => "q1",
            NamedConstant::Q2 => "q2",
            NamedConstant::Q3 => "q3",
            NamedConstant::QPrime => "qprime",
            NamedConstant::QDoublePrime => "qprimeprime",
            NamedConstant::Q4 => "q4",
            NamedConstant::QCheck => "qcheck",
            NamedConstant::QF => "qf",
        }
    }

    /// Coefficients, highest degree first.
    pub fn descending_coeffs(self) -> &'static [i64] {
        match self {
            NamedConstant::Golden => &[1, -1, -1],
            NamedConstant::Q1 => &[1, 0, -1, -1, -2, -1, -1],
            NamedConstant::Q2 => &[1, 0, -2, -1, 0, 0, -1],
            NamedConstant::Q3 => &[1, -1, -1, 0, -1, 1],
            NamedConstant::QPrime => &[1, 0, -1, -1, -2, -2],
            NamedConstant::QDoublePrime => &[1, -2, 1, -1, 1, -1],
            NamedConstant::Q4 => &[1, 0, -1, -1, -2, -2, -1, -1],
            NamedConstant::QCheck => &[1, 0, -2, -1, -1],
            // x^3 - 2x^2 + x - 1; the variant x^3 - 2x^2 - 1 has no root in (1, 2).
            NamedConstant::QF => &[1, -2, 1, -1],
        }
    }

    pub fn polynomial(self) -> IntPolynomial {
        IntPolynomial::from_descending(self.descending_coeffs())
    }

    /// Five-place decimal the constant is customarily quoted with.
    pub fn quoted_decimal(self) -> &'static str {
        match self {
            NamedConstant::Golden => "1.61803",
            NamedConstant::Q1 => "1.64541",
            NamedConstant::Q2 => "1.65462",
            NamedConstant::Q3 => "1.68042",
            NamedConstant::QPrime => "1.66184",
            NamedConstant::QDoublePrime => "1.67365",
            NamedConstant::Q4 => "1.69784",
            NamedConstant::QCheck => "1.71064",
            NamedConstant::QF => "1.75488",
        }
    }

    fn slot(self) -> &'static OnceLock<Base> {
        static SLOTS: [OnceLock<Base>; 9] = [const { OnceLock::new() }; 9];
        &SLOTS[self as usize]
    }

    /// The root in (1, 2), shared process-wide so refinements accumulate.
    pub fn value(self) -> AlgebraicReal {
        self.base().q().clone()
    }

    /// The constant as an expansion base (with its number field).
    pub fn base(self) -> &'static Base {
        self.slot().get_or_init(|| {
            let q = AlgebraicReal::new(&self.polynomial(), &int(1), &int(2))
                .expect("named constants have exactly one root in (1, 2)");
            Base::new_unchecked(q)
        })
    }

    /// Conjugate used in the exclusion argument, with a window isolating it.
    pub fn conjugate(self) -> Option<(AlgebraicReal, (crate::exactnum::Rational, crate::exactnum::Rational))> {
        let w = match self {
            NamedConstant::Q1 => (rat(-13, 10), rat(-11, 10)),
            NamedConstant::Q2 => (rat(-135, 100), rat(-12, 10)),
            _ => return None,
        };
        let a = AlgebraicReal::new(&self.polynomial(), &w.0, &w.1).ok()?;
        Some((a, w))
    }
}

impl fmt::Display for NamedConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedConstant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        NamedConstant::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown constant {s:?}")))
    }
}
