//! Exact rational scalars and their text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The field every algebra lives over.
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p"`, `"-p"` or `"p/q"` with decimal integers. The result is reduced.
pub fn parse(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::ParseRational(text.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise, sign on the numerator.
pub fn format(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Serializes an integer as a bare JSON number of any size.
pub fn serialize_int<S: serde::Serializer>(value: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    let number: serde_json::Number = value.to_string().parse().map_err(serde::ser::Error::custom)?;
    number.serialize(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_reduces_and_normalises_sign() {
        let r = parse("4/-6").unwrap();
        assert_eq!(format(&r), "-2/3");
        assert_eq!(format(&parse(" 7 ").unwrap()), "7");
        assert_eq!(format(&parse("0/5").unwrap()), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse("1/0").is_err());
        assert!(parse("1.5").is_err());
        assert!(parse("").is_err());
    }
}
