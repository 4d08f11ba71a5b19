use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A proper half-integer `k + 1/2`, stored as the odd integer `2k + 1`.
///
/// Rendered and parsed as an exact fraction (`"3/2"`, `"-1/2"`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i64);

impl HalfInt {
    /// The half-integer `k + 1/2`.
    pub const fn new(k: i64) -> Self {
        HalfInt(2 * k + 1)
    }

    /// Builds the half-integer whose double is `twice`; `twice` must be odd.
    pub fn from_twice(twice: i64) -> Option<Self> {
        (twice.rem_euclid(2) == 1).then_some(HalfInt(twice))
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    /// `x - 1/2`, an integer.
    pub const fn lower(self) -> i64 {
        (self.0 - 1) / 2
    }

    /// `x + 1/2`, an integer.
    pub const fn upper(self) -> i64 {
        (self.0 + 1) / 2
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub const fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// Nearest half-integer to `z`; exact ties go toward −∞.
    pub fn nearest(z: f64) -> Self {
        // Half-integers are k + 1/2; nearest k to z - 1/2, ties down.
        let w = z - 0.5;
        let k = (w - 0.5).ceil();
        HalfInt::new(k as i64)
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: i64) -> HalfInt {
        HalfInt(self.0 + 2 * rhs)
    }
}

impl Sub<i64> for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: i64) -> HalfInt {
        HalfInt(self.0 - 2 * rhs)
    }
}

/// Difference of two half-integers is an integer.
impl Sub for HalfInt {
    type Output = i64;
    fn sub(self, rhs: HalfInt) -> i64 {
        (self.0 - rhs.0) / 2
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `"p/2"` with odd `p`, or a decimal such as `"-2.5"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a half-integer: {s:?}"));
        if let Some((num, den)) = s.split_once('/') {
            if den.trim() != "2" {
                return Err(bad());
            }
            let twice: i64 = num.trim().parse().map_err(|_| bad())?;
            return HalfInt::from_twice(twice).ok_or_else(bad);
        }
        let value: f64 = s.parse().map_err(|_| bad())?;
        let twice = 2.0 * value;
        if twice.fract() != 0.0 || twice.abs() > 1e15 {
            return Err(bad());
        }
        HalfInt::from_twice(twice as i64).ok_or_else(bad)
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses an inclusive lattice range such as `"-7/2..7/2"`.
pub fn parse_range(s: &str) -> Result<Vec<HalfInt>> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| Error::Parse(format!("expected `a..b`, got {s:?}")))?;
    let lo: HalfInt = lo.parse()?;
    let hi: HalfInt = hi.parse()?;
    if hi < lo {
        return Err(Error::Parse(format!("empty range {s:?}")));
    }
    Ok((0..=(hi - lo)).map(|k| lo + k).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        assert_eq!(HalfInt::new(1).to_string(), "3/2");
        assert_eq!(HalfInt::new(-1).to_string(), "-1/2");
        assert_eq!("-5/2".parse::<HalfInt>().unwrap(), HalfInt::new(-3));
        assert_eq!("2.5".parse::<HalfInt>().unwrap(), HalfInt::new(2));
        assert!("2/2".parse::<HalfInt>().is_err());
        assert!("1".parse::<HalfInt>().is_err());
        assert!("1/3".parse::<HalfInt>().is_err());
    }

    #[test]
    fn lower_upper() {
        let x = HalfInt::new(-3); // -5/2
        assert_eq!(x.lower(), -3);
        assert_eq!(x.upper(), -2);
        assert_eq!(HalfInt::new(0).lower(), 0);
        assert_eq!(HalfInt::new(0).upper(), 1);
    }

    #[test]
    fn nearest_ties_down() {
        assert_eq!(HalfInt::nearest(0.0), HalfInt::new(-1));
        assert_eq!(HalfInt::nearest(1.0), HalfInt::new(0));
        assert_eq!(HalfInt::nearest(0.6), HalfInt::new(0));
        assert_eq!(HalfInt::nearest(-0.6), HalfInt::new(-1));
        assert_eq!(HalfInt::nearest(40.2), HalfInt::new(40));
        assert_eq!(HalfInt::nearest(39.9), HalfInt::new(39));
        assert_eq!(HalfInt::nearest(-3.0), HalfInt::new(-4));
    }

    #[test]
    fn range() {
        let r = parse_range("-7/2..7/2").unwrap();
        assert_eq!(r.len(), 8);
        assert_eq!(r[0], HalfInt::new(-4));
        assert_eq!(r[7], HalfInt::new(3));
    }
}
