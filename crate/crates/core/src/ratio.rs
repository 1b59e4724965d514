//! Exact rational scalars and their canonical string form.

use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// The scalar type used for all exact computations.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise, `q > 0`.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses the canonical form produced by [`rat_to_string`].
pub fn rat_from_string(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let denom = parse_int(d)?;
            if denom.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(parse_int(n)?, denom))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// `true` iff `x` is an integer.
pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

pub fn rat_abs(x: &Rat) -> Rat {
    x.abs()
}
