//! Orbit equations between special points and their defining polynomials.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{AlgebraicReal, IntPolynomial, Rational};
use crate::expansions::{y_rf, z_rf, Base, DigitWord, SpecialPoint};
use crate::symbolic::{RationalFunction, Window};

/// Value of a special point as a function of q.
pub fn special_rf(p: SpecialPoint) -> RationalFunction {
    match p {
        SpecialPoint::Y(j) => y_rf(j),
        SpecialPoint::Z(j) => z_rf(j),
        SpecialPoint::InvQ => RationalFunction::monomial(-1),
        SpecialPoint::SRight => {
            RationalFunction::new(IntPolynomial::one(), IntPolynomial::from_i64s(&[0, -1, 1])).unwrap()
        }
    }
}

/// The reflection `x -> 1/(q-1) - x` swaps `y_j` with `z_j` and `1/q` with
/// `1/(q^2-q)`.
pub fn mirror_point(p: SpecialPoint) -> SpecialPoint {
    match p {
        SpecialPoint::Y(j) => SpecialPoint::Z(j),
        SpecialPoint::Z(j) => SpecialPoint::Y(j),
        SpecialPoint::InvQ => SpecialPoint::SRight,
        SpecialPoint::SRight => SpecialPoint::InvQ,
    }
}

/// Symbolic value of the orbit point reached from `start` by applying the
/// maps in `word`, first digit first.
pub fn symbolic_orbit(start: SpecialPoint, word: &[u8]) -> RationalFunction {
    let q = RationalFunction::q();
    word.iter().fold(special_rf(start), |f, &d| &(&q * &f) - &RationalFunction::constant(i64::from(d)))
}

/// Renders a map word applied to a point, e.g. `[1,0,0,0]` on `y1` as
/// `T0^3(T1(y1))`.
pub fn orbit_text(start: SpecialPoint, word: &[u8]) -> String {
    let mut s = start.to_string();
    let mut i = 0;
    while i < word.len() {
        let d = word[i];
        let run = word[i..].iter().take_while(|&&e| e == d).count();
        s = if run == 1 { format!("T{d}({s})") } else { format!("T{d}^{run}({s})") };
        i += run;
    }
    s
}

/// One equation `word(from) = to`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub from: SpecialPoint,
    pub word: DigitWord,
    pub to: SpecialPoint,
}

impl Step {
    pub fn new(from: SpecialPoint, word: &[u8], to: SpecialPoint) -> Self {
        Step { from, word: word.to_vec(), to }
    }

    pub fn lhs(&self) -> RationalFunction {
        symbolic_orbit(self.from, &self.word)
    }

    pub fn rhs(&self) -> RationalFunction {
        special_rf(self.to)
    }

    pub fn mirror(&self) -> Self {
        Step {
            from: mirror_point(self.from),
            word: self.word.iter().map(|d| 1 - d).collect(),
            to: mirror_point(self.to),
        }
    }

    /// Numerator of `lhs - rhs`, primitive, with the factors q, q-1 and
    /// q+1 removed (none of them vanishes in (1, 2)).
    pub fn cleared(&self) -> Result<IntPolynomial> {
        let e = &self.lhs() - &self.rhs();
        if e.is_zero() {
            return Err(Error::IdenticallySatisfied);
        }
        Ok(strip_trivial_factors(e.num()))
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", orbit_text(self.from, &self.word), self.to)
    }
}

pub(crate) fn strip_trivial_factors(p: &IntPolynomial) -> IntPolynomial {
    let mut p = p.primitive();
    for f in [[0, 1], [-1, 1], [1, 1]] {
        let f = IntPolynomial::from_i64s(&f);
        while let Some(r) = p.div_exact(&f) {
            if p.degree() == Some(0) {
                break;
            }
            p = r;
        }
    }
    p.primitive()
}

/// A system of orbit equations holding simultaneously; the defining
/// polynomial is the gcd of the individual ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateEquation {
    pub steps: Vec<Step>,
    pub cleared: IntPolynomial,
}

impl CandidateEquation {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut cleared: Option<IntPolynomial> = None;
        for s in &steps {
            let c = s.cleared()?;
            cleared = Some(match cleared {
                None => c,
                Some(g) => g.gcd(&c),
            });
        }
        let cleared = cleared.ok_or(Error::IdenticallySatisfied)?;
        Ok(CandidateEquation { steps, cleared })
    }

    pub fn single(from: SpecialPoint, word: &[u8], to: SpecialPoint) -> Result<Self> {
        Self::new(vec![Step::new(from, word, to)])
    }

    /// Index of the target for a single `y_k` / `z_k` equation.
    pub fn k(&self) -> Option<usize> {
        match self.steps.as_slice() {
            [s] => match s.to {
                SpecialPoint::Y(k) | SpecialPoint::Z(k) => Some(k),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn mirror(&self) -> Result<Self> {
        Self::new(self.steps.iter().map(Step::mirror).collect())
    }

    /// Whether every equation holds exactly in the field of `base`.
    pub fn holds_at(&self, base: &Base) -> Result<bool> {
        for s in &self.steps {
            let diff = &base.element(&s.lhs())? - &base.element(&s.rhs())?;
            if !diff.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for CandidateEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.steps.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(", "))
    }
}

/// A root of a candidate equation, with the printed table data it is
/// compared against when there is one.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub equation: CandidateEquation,
    pub k: Option<usize>,
    pub root: AlgebraicReal,
    pub root_decimal_5dp: String,
    /// The equation holds exactly at the root.
    pub verified: bool,
    pub printed_polynomial: Option<IntPolynomial>,
    pub printed_decimal: Option<String>,
    pub agreement: Option<Agreement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Agreement {
    Match,
    PolynomialMismatch,
    DecimalMismatch,
}

impl Agreement {
    pub fn name(self) -> &'static str {
        match self {
            Agreement::Match => "Match",
            Agreement::PolynomialMismatch => "PolynomialMismatch",
            Agreement::DecimalMismatch => "DecimalMismatch",
        }
    }
}

/// All roots of the equation's polynomial in the closed rational window,
/// each checked by exact evaluation of the orbit equations.
pub fn solve_equation(eq: &CandidateEquation, window: (&Rational, &Rational)) -> Result<Vec<TableRow>> {
    let one = Rational::from_integer(1.into());
    let two = Rational::from_integer(2.into());
    if window.0 <= &one || window.1 >= &two {
        return Err(Error::UnsupportedWindow(format!("[{}, {}] is not inside (1, 2)", window.0, window.1)));
    }
    solve_in(eq, &Window::rational(window.0, window.1))
}

pub(crate) fn solve_in(eq: &CandidateEquation, w: &Window) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for root in w.roots_of(&eq.cleared)? {
        let base = Base::new(root.clone())?;
        rows.push(TableRow {
            equation: eq.clone(),
            k: eq.k(),
            root_decimal_5dp: root.refine_to_digits(5),
            verified: eq.holds_at(&base)?,
            root,
            printed_polynomial: None,
            printed_decimal: None,
            agreement: None,
        });
    }
    Ok(rows)
}
