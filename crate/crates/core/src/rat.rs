//! Exact rational arithmetic helpers.
//!
//! All probabilities and distances in this crate are arbitrary-precision
//! rationals. The canonical text encoding is `"p/q"` in lowest terms, or
//! just `"p"` when the denominator is 1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The rational number type used throughout the crate.
pub type Rat = BigRational;

/// Rational zero.
pub fn zero() -> Rat {
    Rat::zero()
}

/// Rational one.
pub fn one() -> Rat {
    Rat::one()
}

/// Builds `n/d` from machine integers. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer rational `n`.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses the canonical text form: `"p"` or `"p/q"` with optional sign.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let mk_err = || Error::ParseRational(s.to_string());
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| mk_err())?;
            Ok(Rat::from_integer(n))
        }
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| mk_err())?;
            let d: BigInt = den.trim().parse().map_err(|_| mk_err())?;
            if d.is_zero() {
                return Err(mk_err());
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// Formats a rational canonically: reduced, `"p"` when integral, else `"p/q"`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest `f64` to a rational; saturates for values outside f64 range.
pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}
