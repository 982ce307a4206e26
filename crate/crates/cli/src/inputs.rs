//! Parsing of bases and points given on the command line.

use std::str::FromStr;

use betaexp::constants::NamedConstant;
use betaexp::exactnum::{parse_interval, parse_rational, IntPolynomial};
use betaexp::expansions::{make_y, make_z, pi_value, Base, EventuallyPeriodic, PointSpec};
use betaexp::symbolic::RationalFunction;
use betaexp::{Error, Result};

/// A named constant (`q3`), a polynomial with an isolating window
/// (`1,-1,0,-1,-1,1@1,2`), or a rational (`5/3`, `1.66`).
pub fn parse_base(s: &str) -> Result<(Base, Option<NamedConstant>)> {
    let s = s.trim();
    if let Ok(c) = NamedConstant::from_str(s) {
        return Ok((c.base().clone(), Some(c)));
    }
    if let Some((poly, window)) = s.split_once('@') {
        let p = IntPolynomial::parse(poly)?;
        let (lo, hi) = parse_interval(window)?;
        return Ok((Base::from_polynomial(&p, &lo, &hi)?, None));
    }
    let r = parse_rational(s).map_err(|_| Error::Parse(format!("unrecognised base {s:?}")))?;
    Ok((Base::from_rational(&r)?, None))
}

fn index(s: &str) -> Result<usize> {
    match s.parse::<usize>() {
        Ok(j) if j >= 1 => Ok(j),
        _ => Err(Error::Parse(format!("index {s:?} must be a positive integer"))),
    }
}

/// `one`, `zero`, `y:<j>`, `z:<j>`, `pi:<pre>|<period>`, a rational, or a
/// rational function of q written `num/den` in ascending coefficients.
pub fn parse_point(s: &str, base: &Base) -> Result<PointSpec> {
    let s = s.trim();
    match s {
        "one" => return Ok(PointSpec::one(base)),
        "zero" => return Ok(PointSpec::zero(base)),
        _ => {}
    }
    if let Some(j) = s.strip_prefix("y:") {
        return Ok(make_y(index(j)?, base));
    }
    if let Some(j) = s.strip_prefix("z:") {
        return Ok(make_z(index(j)?, base));
    }
    if let Some(w) = s.strip_prefix("pi:") {
        let w: EventuallyPeriodic = w.parse()?;
        return PointSpec::new(base, pi_value(&w, base), format!("pi({})", w.pretty()));
    }
    let value = match parse_rational(s) {
        Ok(r) => base.field().from_rational(&r),
        Err(_) => base.element(&RationalFunction::parse(s)?)?,
    };
    PointSpec::new(base, value, s)
}
