//! Exact rational scalars.
//!
//! [`Rational`] is `num_rational::BigRational`, which already keeps values in
//! lowest terms with a positive denominator. This module adds the strict text
//! form used on the command line and in JSON (`"-1"`, `"1/2"`), plus serde
//! adapters that emit rationals as strings.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

fn parse_digits(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = if allow_sign {
        s.strip_prefix(['-', '+']).unwrap_or(s)
    } else {
        s
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses `[sign]integer[/positive-integer]`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(text.to_string());
    let s = text.trim();
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer = parse_digits(numer, true).ok_or_else(bad)?;
    let denom = match denom {
        Some(d) => parse_digits(d, false).ok_or_else(bad)?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| {
        num_integer::lcm(acc, v.denom().clone())
    })
}

pub(crate) fn is_integral(value: &Rational) -> bool {
    value.denom().is_one()
}

/// Serde adapter: a single rational as a string.
pub mod as_string {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        value: &Rational,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(de::Error::custom)
    }
}

/// Serde adapter: nested vectors of rationals as strings.
pub mod as_string_matrix {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        rows: &[Vec<Rational>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for row in rows {
            let row: Vec<String> = row.iter().map(format_rational).collect();
            seq.serialize_element(&row)?;
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
                    .map(|t| parse_rational(t).map_err(de::Error::custom))
                    .collect()
            })
            .collect()
    }
}
