//! A base q in (1, 2) together with its number field and the cached
//! endpoints of the regions the digit maps act on.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::constants::NamedConstant;
use crate::error::{Error, Result};
use crate::exactnum::{int, AlgebraicReal, IntPolynomial, QField, QFieldElement, Rational};
use crate::symbolic::RationalFunction;

struct Endpoints {
    inv_q: QFieldElement,
    s_right: QFieldElement,
    top: QFieldElement,
    j_left: QFieldElement,
    j_right: QFieldElement,
    pi_10: QFieldElement,
}

struct Inner {
    q: AlgebraicReal,
    field: Arc<QField>,
    endpoints: OnceLock<Endpoints>,
    unique_range: OnceLock<std::result::Result<(), String>>,
    is_qcheck: OnceLock<bool>,
}

/// Cheap to clone; all clones share refinement and caches.
#[derive(Clone)]
pub struct Base {
    inner: Arc<Inner>,
}

impl Base {
    /// Fails unless `1 < q < 2`.
    pub fn new(q: AlgebraicReal) -> Result<Self> {
        if q.cmp_rational(&int(1)) != Ordering::Greater || q.cmp_rational(&int(2)) != Ordering::Less {
            return Err(Error::BaseOutOfRange(q.refine_to_digits(5)));
        }
        Ok(Self::new_unchecked(q))
    }

    pub(crate) fn new_unchecked(q: AlgebraicReal) -> Self {
        let field = QField::new(q.clone());
        Base {
            inner: Arc::new(Inner {
                q,
                field,
                endpoints: OnceLock::new(),
                unique_range: OnceLock::new(),
                is_qcheck: OnceLock::new(),
            }),
        }
    }

    pub fn from_rational(r: &Rational) -> Result<Self> {
        Self::new(AlgebraicReal::from_rational(r))
    }

    /// The root of `poly` in `[lo, hi]`.
    pub fn from_polynomial(poly: &IntPolynomial, lo: &Rational, hi: &Rational) -> Result<Self> {
        Self::new(AlgebraicReal::new(poly, lo, hi)?)
    }

    pub fn q(&self) -> &AlgebraicReal {
        &self.inner.q
    }

    pub fn field(&self) -> &Arc<QField> {
        &self.inner.field
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub fn gen(&self) -> QFieldElement {
        self.field().gen()
    }

    pub fn zero(&self) -> QFieldElement {
        self.field().zero()
    }

    pub fn one(&self) -> QFieldElement {
        self.field().one()
    }

    pub fn element(&self, r: &RationalFunction) -> Result<QFieldElement> {
        r.eval_in(self.field())
    }

    fn endpoints(&self) -> &Endpoints {
        self.inner.endpoints.get_or_init(|| {
            let e = |num: &[i64], den: &[i64]| {
                self.field()
                    .from_fraction(&IntPolynomial::from_i64s(num), &IntPolynomial::from_i64s(den))
                    .expect("denominators do not vanish for 1 < q < 2")
            };
            Endpoints {
                inv_q: e(&[1], &[0, 1]),
                s_right: e(&[1], &[0, -1, 1]),
                top: e(&[1], &[-1, 1]),
                j_left: e(&[0, 1, 1], &[-1, 0, 0, 0, 1]),
                j_right: e(&[1, 0, 0, 1], &[-1, 0, 0, 0, 1]),
                pi_10: e(&[0, 1], &[-1, 0, 1]),
            }
        })
    }

    /// `1/q`, the left end of the switch region.
    pub fn inv_q(&self) -> &QFieldElement {
        &self.endpoints().inv_q
    }

    /// `1/(q^2 - q)`, the right end of the switch region.
    pub fn s_right(&self) -> &QFieldElement {
        &self.endpoints().s_right
    }

    /// `1/(q - 1)`, the right end of `[0, 1/(q-1)]`.
    pub fn top(&self) -> &QFieldElement {
        &self.endpoints().top
    }

    /// `(q + q^2)/(q^4 - 1)`.
    pub fn j_left(&self) -> &QFieldElement {
        &self.endpoints().j_left
    }

    /// `(1 + q^3)/(q^4 - 1)`.
    pub fn j_right(&self) -> &QFieldElement {
        &self.endpoints().j_right
    }

    /// `q/(q^2 - 1)`, the value of `(10)^inf`.
    pub fn pi_10(&self) -> &QFieldElement {
        &self.endpoints().pi_10
    }

    /// `q^k` for any integer k.
    pub fn pow(&self, k: i64) -> QFieldElement {
        self.field().gen_pow(k).expect("q is nonzero")
    }

    /// Succeeds iff q lies strictly between the golden ratio and q_f, where
    /// the unique-expansion set has its explicit description.
    pub fn check_unique_range(&self) -> Result<()> {
        self.inner
            .unique_range
            .get_or_init(|| {
                let q = self.q();
                let lo = NamedConstant::Golden.value();
                let hi = NamedConstant::QF.value();
                if q.cmp_algebraic(&lo) == Ordering::Greater && q.cmp_algebraic(&hi) == Ordering::Less {
                    Ok(())
                } else {
                    Err(q.refine_to_digits(5))
                }
            })
            .clone()
            .map_err(Error::UniqueRangeViolation)
    }

    pub fn is_qcheck(&self) -> bool {
        *self.inner.is_qcheck.get_or_init(|| self.q().cmp_algebraic(&NamedConstant::QCheck.value()) == Ordering::Equal)
    }

    pub fn decimal(&self, digits: usize) -> String {
        self.q().refine_to_digits(digits)
    }
}

impl fmt::Debug for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Base({:?})", self.q())
    }
}
