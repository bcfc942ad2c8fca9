//! Exact rationals and their `"a/b"` text form.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Always `num/den`, including integers (`"-3/1"`).
pub fn to_ratio_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `"a/b"` or a bare integer `"a"`.
pub fn parse_ratio(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// Scale a vector by the lcm of its denominators and divide by the gcd of the
/// resulting numerators. The sign is left untouched.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<Rational> {
    use num_integer::Integer;
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scaled: Vec<BigInt> = v.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let gcd = scaled.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    if gcd.is_zero() {
        return v.to_vec();
    }
    scaled
        .into_iter()
        .map(|n| Rational::from_integer(n / &gcd))
        .collect()
}

/// Flip the sign so that the first nonzero entry is positive.
pub fn leading_positive(v: &mut [Rational]) {
    if let Some(first) = v.iter().find(|q| !q.is_zero()) {
        if first.is_negative() {
            for q in v.iter_mut() {
                *q = -q.clone();
            }
        }
    }
}

/// serde adapter for a single rational as an `"a/b"` string.
pub mod ratio_str {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_ratio_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_ratio(&s).map_err(serde::de::Error::custom)
    }
}

/// serde adapter for a list of rational vectors.
pub mod ratio_matrix_str {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(
        rows: &[Vec<Rational>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for row in rows {
            let strs: Vec<String> = row.iter().map(to_ratio_string).collect();
            seq.serialize_element(&strs)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        rows.iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_ratio(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)
    }
}
