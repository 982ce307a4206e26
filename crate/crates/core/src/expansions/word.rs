//! Finite and eventually periodic binary digit sequences.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite digit string, most significant first.
pub type DigitWord = Vec<u8>;

pub fn parse_digits(s: &str) -> Result<DigitWord> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Parse(format!("digit {c:?} is not 0 or 1"))),
        })
        .collect()
}

pub fn digits_to_string(w: &[u8]) -> String {
    w.iter().map(|d| if *d == 0 { '0' } else { '1' }).collect()
}

/// `preperiod (period)^inf` in canonical form: the period is primitive and
/// the preperiod cannot be shortened by rotating the period.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventuallyPeriodic {
    preperiod: DigitWord,
    period: DigitWord,
}

impl EventuallyPeriodic {
    pub fn new(preperiod: DigitWord, period: DigitWord) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Parse("period must be nonempty".into()));
        }
        if preperiod.iter().chain(&period).any(|&d| d > 1) {
            return Err(Error::Parse("digits must be 0 or 1".into()));
        }
        Ok(Self::canonical(preperiod, period))
    }

    /// A finite word followed by zeros.
    pub fn finite(w: DigitWord) -> Result<Self> {
        Self::new(w, vec![0])
    }

    pub fn periodic(period: DigitWord) -> Result<Self> {
        Self::new(Vec::new(), period)
    }

    fn canonical(mut pre: DigitWord, mut period: DigitWord) -> Self {
        let n = period.len();
        if let Some(d) = (1..=n).find(|d| n.is_multiple_of(*d) && (0..n).all(|i| period[i] == period[i % d])) {
            period.truncate(d);
        }
        while let Some(&last) = pre.last() {
            if last != *period.last().unwrap() {
                break;
            }
            pre.pop();
            period.rotate_right(1);
        }
        EventuallyPeriodic { preperiod: pre, period }
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    /// Digit at 1-based position `i`.
    pub fn digit(&self, i: usize) -> u8 {
        assert!(i >= 1, "digit positions start at 1");
        let i = i - 1;
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn first_digit(&self) -> u8 {
        self.digit(1)
    }

    pub fn prefix(&self, n: usize) -> DigitWord {
        (1..=n).map(|i| self.digit(i)).collect()
    }

    /// Drops the first digit.
    pub fn shift(&self) -> Self {
        if self.preperiod.is_empty() {
            let mut p = self.period.clone();
            p.rotate_left(1);
            Self::canonical(Vec::new(), p)
        } else {
            Self::canonical(self.preperiod[1..].to_vec(), self.period.clone())
        }
    }

    /// Prepends digits.
    pub fn prepend(&self, head: &[u8]) -> Self {
        let mut pre = head.to_vec();
        pre.extend_from_slice(&self.preperiod);
        Self::canonical(pre, self.period.clone())
    }

    /// Conventional notation such as `1(1000)^inf`.
    pub fn pretty(&self) -> String {
        format!("{}({})^inf", digits_to_string(&self.preperiod), digits_to_string(&self.period))
    }
}

impl fmt::Display for EventuallyPeriodic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", digits_to_string(&self.preperiod), digits_to_string(&self.period))
    }
}

impl fmt::Debug for EventuallyPeriodic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EventuallyPeriodic({})", self.pretty())
    }
}

impl FromStr for EventuallyPeriodic {
    type Err = Error;
    /// `"pre|period"`; an empty period (`"w|"`) means a finite word.
    fn from_str(s: &str) -> Result<Self> {
        let (pre, per) = s
            .trim()
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("digit word {s:?} needs a '|' before the period")))?;
        let pre = parse_digits(pre)?;
        let per = parse_digits(per)?;
        if per.is_empty() {
            Self::finite(pre)
        } else {
            Self::new(pre, per)
        }
    }
}
