//! Real parameters that stay exact when given exactly.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// A real number, either an exact rational or a float. Arithmetic between
/// two exact values is exact; anything touching a float becomes a float.
#[derive(Debug, Clone, PartialEq)]
pub enum Param {
    Exact(BigRational),
    Float(f64),
}

impl Param {
    pub fn int(n: i64) -> Param {
        Param::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`; panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Param {
        Param::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn float(x: f64) -> Param {
        Param::Float(x)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Param::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Param::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Param::Float(x) => *x,
        }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        match self {
            Param::Exact(q) => q.is_zero(),
            Param::Float(x) => x.abs() <= tol,
        }
    }

    /// Exact equality for two exact values, `|a - b| <= tol` otherwise.
    pub fn approx_eq(&self, other: &Param, tol: f64) -> bool {
        match (self, other) {
            (Param::Exact(a), Param::Exact(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() <= tol,
        }
    }

    pub fn abs(&self) -> Param {
        match self {
            Param::Exact(q) => Param::Exact(q.abs()),
            Param::Float(x) => Param::Float(x.abs()),
        }
    }

    fn zip(
        &self,
        other: &Param,
        exact: impl Fn(&BigRational, &BigRational) -> BigRational,
        float: impl Fn(f64, f64) -> f64,
    ) -> Param {
        match (self, other) {
            (Param::Exact(a), Param::Exact(b)) => Param::Exact(exact(a, b)),
            _ => Param::Float(float(self.to_f64(), other.to_f64())),
        }
    }
}

impl From<i64> for Param {
    fn from(n: i64) -> Self {
        Param::int(n)
    }
}

impl From<f64> for Param {
    fn from(x: f64) -> Self {
        Param::Float(x)
    }
}

impl Add for &Param {
    type Output = Param;
    fn add(self, rhs: &Param) -> Param {
        self.zip(rhs, |a, b| a + b, |a, b| a + b)
    }
}

impl Sub for &Param {
    type Output = Param;
    fn sub(self, rhs: &Param) -> Param {
        self.zip(rhs, |a, b| a - b, |a, b| a - b)
    }
}

impl Mul for &Param {
    type Output = Param;
    fn mul(self, rhs: &Param) -> Param {
        self.zip(rhs, |a, b| a * b, |a, b| a * b)
    }
}

/// Exact division by an exact zero falls back to a float (inf/NaN).
impl Div for &Param {
    type Output = Param;
    fn div(self, rhs: &Param) -> Param {
        match (self, rhs) {
            (Param::Exact(a), Param::Exact(b)) if !b.is_zero() => Param::Exact(a / b),
            _ => Param::Float(self.to_f64() / rhs.to_f64()),
        }
    }
}

impl Neg for &Param {
    type Output = Param;
    fn neg(self) -> Param {
        match self {
            Param::Exact(q) => Param::Exact(-q),
            Param::Float(x) => Param::Float(-x),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Exact(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Param::Exact(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Param::Float(x) => write!(f, "{x:?}"),
        }
    }
}

/// Accepts integers (`-3`), fractions (`1/3`) and plain decimals (`0.25`),
/// all parsed exactly.
impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Param, Error> {
        let bad = || Error::InvalidParameter(format!("not an exact number: {s:?}"));
        let t = s.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::InvalidParameter(format!(
                    "zero denominator in {s:?}"
                )));
            }
            return Ok(Param::Exact(BigRational::new(n, d)));
        }
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty()
            || !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let num: BigInt = digits.parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        let q = BigRational::new(num, den);
        Ok(Param::Exact(if neg { -q } else { q }))
    }
}

/// Exact integers serialize as JSON integers, other exact values as
/// fraction strings, floats as JSON floats.
impl Serialize for Param {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Param::Exact(q) if q.is_integer() => match q.numer().to_i64() {
                Some(n) => serializer.serialize_i64(n),
                None => serializer.serialize_str(&self.to_string()),
            },
            Param::Exact(_) => serializer.serialize_str(&self.to_string()),
            Param::Float(x) => serializer.serialize_f64(*x),
        }
    }
}

struct ParamVisitor;

impl Visitor<'_> for ParamVisitor {
    type Value = Param;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a number or an exact number string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Param, E> {
        Ok(Param::int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Param, E> {
        Ok(Param::Exact(BigRational::from_integer(BigInt::from(v))))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Param, E> {
        Ok(Param::Float(v))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Param, E> {
        v.parse().map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Param {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Param, D::Error> {
        deserializer.deserialize_any(ParamVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exact_forms() {
        assert_eq!("0.25".parse::<Param>().unwrap(), Param::ratio(1, 4));
        assert_eq!("-3".parse::<Param>().unwrap(), Param::int(-3));
        assert_eq!("2/6".parse::<Param>().unwrap(), Param::ratio(1, 3));
        assert_eq!("-.5".parse::<Param>().unwrap(), Param::ratio(-1, 2));
        assert!("1e3".parse::<Param>().is_err());
        assert!("1/0".parse::<Param>().is_err());
        assert!("".parse::<Param>().is_err());
        assert!(".".parse::<Param>().is_err());
    }

    #[test]
    fn exact_arithmetic_stays_exact() {
        let third = Param::ratio(1, 3);
        let sum = &(&third + &third) + &third;
        assert_eq!(sum, Param::int(1));
        let mixed = &third + &Param::float(0.5);
        assert!(!mixed.is_exact());
        assert!(mixed.approx_eq(&Param::ratio(5, 6), 1e-12));
    }

    #[test]
    fn exact_comparison_has_no_slack() {
        let a = Param::ratio(1, 3);
        let b = Param::ratio(333_333_333_333, 1_000_000_000_000);
        assert!(!a.approx_eq(&b, 1e-9));
        assert!(a.approx_eq(&Param::float(1.0 / 3.0), 1e-9));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Param::int(-2).to_string(), "-2");
        assert_eq!(Param::ratio(3, 6).to_string(), "1/2");
        assert_eq!(Param::float(0.5).to_string(), "0.5");
    }
}
