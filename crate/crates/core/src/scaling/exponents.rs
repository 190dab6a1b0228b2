use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};

/// `α_L(n) = (2 + n)/4`, the smallest exponent at which the energy is scale-invariant.
pub fn lions_exponent(n: u32) -> Rational64 {
    Rational64::new(2 + n as i64, 4)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Subcritical,
    Critical,
    Supercritical,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Subcritical => "subcritical",
            Classification::Critical => "critical",
            Classification::Supercritical => "supercritical",
        })
    }
}

fn classify_sign(positive: bool, zero: bool) -> Classification {
    if zero {
        Classification::Critical
    } else if positive {
        Classification::Subcritical
    } else {
        Classification::Supercritical
    }
}

/// `2α − 1 − n/2` together with its sign class, computed exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Margin {
    pub value: Rational64,
    pub classification: Classification,
}

pub fn solvability_margin(n: u32, alpha: Rational64) -> Margin {
    let value = alpha * 2 - 1 - Rational64::new(n as i64, 2);
    Margin { value, classification: classify_sign(value.is_positive(), value.is_zero()) }
}

/// Float version. "Critical" only on an exact zero, so callers who care should
/// pass a rational to [`solvability_margin`].
pub fn solvability_margin_f64(n: u32, alpha: f64) -> (f64, Classification) {
    let value = 2.0 * alpha - 1.0 - n as f64 / 2.0;
    (value, classify_sign(value > 0.0, value == 0.0))
}

/// Parses `"5/4"`, `"-3"`, or a finite decimal such as `"1.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let bad = || Error::InvalidRational(s.to_string());
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad())?;
        let den: i64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Rational64::new(num, den));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) || frac_part.len() > 17 {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num: i64 = digits.parse().map_err(|_| bad())?;
    let den = 10i64.checked_pow(frac_part.len() as u32).ok_or_else(bad)?;
    let r = Rational64::new(num, den);
    Ok(if neg { -r } else { r })
}

pub fn rational_to_f64(r: Rational64) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Accepts either a TOML/JSON number or a rational string for `α`.
pub fn deserialize_exponent<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Number(f64),
        Text(String),
    }
    match Raw::deserialize(d)? {
        Raw::Number(x) => Ok(x),
        Raw::Text(s) => parse_rational(&s)
            .map(rational_to_f64)
            .map_err(serde::de::Error::custom),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(lions_exponent(2), Rational64::from_integer(1));
        assert_eq!(lions_exponent(3), Rational64::new(5, 4));
        assert_eq!(lions_exponent(6), Rational64::from_integer(2));
    }

    #[test]
    fn margins() {
        let m = solvability_margin(3, Rational64::new(5, 4));
        assert!(m.value.is_zero());
        assert_eq!(m.classification, Classification::Critical);
        let m = solvability_margin(3, Rational64::from_integer(1));
        assert_eq!(m.value, Rational64::new(-1, 2));
        assert_eq!(m.classification, Classification::Supercritical);
        assert_eq!(solvability_margin(2, Rational64::new(3, 2)).classification, Classification::Subcritical);
        assert_eq!(solvability_margin_f64(2, 1.0), (0.0, Classification::Critical));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("5/4").unwrap(), Rational64::new(5, 4));
        assert_eq!(parse_rational("1.25").unwrap(), Rational64::new(5, 4));
        assert_eq!(parse_rational(" -0.5 ").unwrap(), Rational64::new(-1, 2));
        assert_eq!(parse_rational("3").unwrap(), Rational64::from_integer(3));
        assert_eq!(parse_rational(".5").unwrap(), Rational64::new(1, 2));
        for s in ["", "1/0", "abc", "1.2.3", "1e3", "."] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn exponent_from_toml() {
        #[derive(Deserialize)]
        struct T {
            #[serde(deserialize_with = "deserialize_exponent")]
            a: f64,
        }
        let t: T = toml::from_str("a = \"5/4\"").unwrap();
        assert_eq!(t.a, 1.25);
        let t: T = toml::from_str("a = 0.8").unwrap();
        assert_eq!(t.a, 0.8);
        assert!(toml::from_str::<T>("a = \"x\"").is_err());
    }
}
