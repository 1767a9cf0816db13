//! Helpers around arbitrary-precision rationals and small rational exponents.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::{Exponent, Rational};

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn exp(n: i64, d: i64) -> Exponent {
    Exponent::new(n, d)
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = |m: &str| Error::ParseError {
        location: format!("rational `{s}`"),
        message: m.to_string(),
    };
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad("numerator is not an integer"))?;
    let d: BigInt = d.parse().map_err(|_| bad("denominator is not an integer"))?;
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

pub fn parse_exponent(s: &str) -> Result<Exponent> {
    to_exponent(&parse_rational(s)?)
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn format_exponent(e: &Exponent) -> String {
    e.to_string()
}

pub fn to_exponent(r: &Rational) -> Result<Exponent> {
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) => Ok(Exponent::new(n, d)),
        _ => Err(Error::InvalidArgument(format!("{r} does not fit in a machine exponent"))),
    }
}

pub fn from_exponent(e: &Exponent) -> Rational {
    rat(*e.numer(), *e.denom())
}

/// Representative of `r mod 1` in `[0, 1)`.
pub fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

pub fn frac_exp(e: &Exponent) -> Exponent {
    e - e.floor()
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        a.max(b)
    } else {
        a.lcm(&b)
    }
}

pub fn denom_u64(r: &Rational) -> u64 {
    r.denom().to_u64().expect("denominator fits in u64")
}

pub fn exp_denom(e: &Exponent) -> u64 {
    e.denom().unsigned_abs()
}

/// `x` such that `a x ≡ 1 (mod m)`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let g = a.extended_gcd(&m);
    if g.gcd.abs() != 1 {
        return None;
    }
    Some((g.x * g.gcd).rem_euclid(m))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}
