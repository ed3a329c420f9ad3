//! Exact rational helpers on top of [`BigRational`].
//!
//! Every probability handled by the crate is a `Rational`. `num-rational`
//! keeps values normalized (positive denominator, reduced by the gcd), so
//! structural equality is numeric equality.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Builds `n/d` in normalized form.
pub fn rat_normalize(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Rational> {
    let d = d.into();
    if d.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(n.into(), d))
}

/// Shorthand for small literal fractions. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    rat_normalize(n, d).expect("literal rational with zero denominator")
}

pub fn half() -> Rational {
    rat(1, 2)
}

/// Parses `"p/q"` or an integer string.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(String::from(s));
    let parse_int = |t: &str| {
        if t.is_empty() || t.starts_with('+') || t.contains(char::is_whitespace) {
            return Err(bad());
        }
        BigInt::from_str(t).map_err(|_| bad())
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            rat_normalize(n, d).map_err(|_| bad())
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Displays a rational as `p/q`, always with an explicit denominator.
pub struct Fraction<'a>(pub &'a Rational);

impl fmt::Display for Fraction<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

pub fn fraction_string(r: &Rational) -> String {
    format!("{}", Fraction(r))
}

/// Presentation-only decimal approximation.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn is_probability(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes() {
        assert_eq!(fraction_string(&rat_normalize(2, 4).unwrap()), "1/2");
        assert_eq!(fraction_string(&rat_normalize(3, -4).unwrap()), "-3/4");
        assert_eq!(fraction_string(&rat_normalize(0, 7).unwrap()), "0/1");
        assert_eq!(rat_normalize(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn parses() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("1").unwrap(), rat(1, 1));
        assert_eq!(parse_rational("-1/3").unwrap(), rat(-1, 3));
        for bad in ["", "1/0", "a/2", "1/", "/2", " 1/2", "1 /2", "+1/2", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn decimal() {
        assert_eq!(to_f64(&rat(13, 20)), 0.65);
        assert!(is_probability(&rat(1, 1)));
        assert!(!is_probability(&rat(-1, 9)));
        assert!(!is_probability(&rat(5, 4)));
    }
}
