//! Exact rational scalars.
//!
//! All linear algebra in this crate runs over arbitrary-precision rationals;
//! nothing is ever rounded. These aliases and helpers keep call sites short.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_zero(x: &Rat) -> bool {
    x.is_zero()
}

pub fn is_one(x: &Rat) -> bool {
    x.is_one()
}

/// Renders `x` as "p" or "p/q", the form used in all JSON output.
pub fn rat_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses "p" or "p/q". Used by CLI pattern arguments.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Rat::from_integer(n))
    }
}

/// Exact integer extraction; `None` when the denominator is not 1.
pub fn as_integer(x: &Rat) -> Option<BigInt> {
    if x.denom().is_one() {
        Some(x.numer().clone())
    } else {
        None
    }
}

/// Serde adapter rendering rationals as `"p"` or `"p/q"` strings, keeping
/// JSON output exact and byte-stable.
pub mod serde_rat {
    use super::{parse_rat, rat_string, Rat};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rat, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&rat_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(de)?;
        parse_rat(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

pub fn abs(x: &Rat) -> Rat {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_roundtrip() {
        for s in ["0", "5", "-3", "1/2", "-7/3"] {
            let x = parse_rat(s).unwrap();
            assert_eq!(rat_string(&x), s);
        }
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("abc").is_none());
        // non-canonical input normalizes
        assert_eq!(rat_string(&parse_rat("2/4").unwrap()), "1/2");
        assert_eq!(rat_string(&parse_rat("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn integer_extraction() {
        assert_eq!(as_integer(&rat(9)).unwrap(), BigInt::from(9));
        assert!(as_integer(&ratio(1, 2)).is_none());
    }
}
