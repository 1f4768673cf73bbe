//! Parsing and formatting of exact rationals as `"p/q"` strings.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::{Error, Result};

/// Parses `"p/q"` or `"p"`. Decimal points and exponents are rejected so that
/// no float ever sneaks into a stability computation.
pub fn parse(s: &str) -> Result<BigRational> {
    let t = s.trim();
    if t.contains(['.', 'e', 'E']) {
        return Err(Error::Parse(format!("`{t}` looks like a float; write it as p/q")));
    }
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p: BigInt = num.parse().map_err(|_| Error::Parse(format!("bad numerator in `{t}`")))?;
    let q: BigInt = den.parse().map_err(|_| Error::Parse(format!("bad denominator in `{t}`")))?;
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{t}`")));
    }
    Ok(BigRational::new(p, q))
}

/// Reduced `"p/q"`, or `"p"` for integers.
pub fn format(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn sign(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
