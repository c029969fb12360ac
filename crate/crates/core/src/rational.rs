use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact non-negative rational `p/q`, always stored in lowest terms.
///
/// Used for the bias parameter gamma and for epsilon thresholds. Every
/// comparison against graph counts is done by cross-multiplication in 128-bit
/// integers; the value is never converted to floating point on a decision
/// path.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    /// Builds `num/den` reduced to lowest terms. Panics if `den == 0`.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        if num == 0 {
            return Rational { num: 0, den: 1 };
        }
        let g = gcd(num, den);
        Rational {
            num: num / g,
            den: den / g,
        }
    }

    pub const ZERO: Rational = Rational { num: 0, den: 1 };

    pub fn half() -> Self {
        Rational { num: 1, den: 2 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// True when `0 < self < 1`, the admissible range for gamma.
    pub fn is_proper_fraction(&self) -> bool {
        self.num > 0 && self.num < self.den
    }

    /// Exact comparison `self <= a/b` for integer counts `a`, `b > 0`.
    pub fn le_ratio(&self, a: u64, b: u64) -> bool {
        (self.num as u128) * (b as u128) <= (a as u128) * (self.den as u128)
    }

    /// Exact comparison `lhs <= self * rhs` on integer counts.
    pub fn scales_at_least(&self, lhs: u64, rhs: u64) -> bool {
        (lhs as u128) * (self.den as u128) <= (self.num as u128) * (rhs as u128)
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let lhs = (self.num as u128) * (other.den as u128);
        let rhs = (other.num as u128) * (self.den as u128);
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational {
    type Err = String;

    /// Parses `"p/q"` or a bare integer `"p"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((p, q)) => (
                p.trim().parse::<u64>().map_err(|e| e.to_string())?,
                q.trim().parse::<u64>().map_err(|e| e.to_string())?,
            ),
            None => (s.parse::<u64>().map_err(|e| e.to_string())?, 1),
        };
        if den == 0 {
            return Err("zero denominator".into());
        }
        Ok(Rational::new(num, den))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let r = Rational::new(6, 4);
        assert_eq!((r.num(), r.den()), (3, 2));
        assert_eq!(Rational::new(0, 7), Rational::ZERO);
    }

    #[test]
    fn parse_and_display_round_trip() {
        let r: Rational = "9/10".parse().unwrap();
        assert_eq!(r.to_string(), "9/10");
        let r: Rational = "3".parse().unwrap();
        assert_eq!(r.to_string(), "3/1");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x/2".parse::<Rational>().is_err());
    }

    #[test]
    fn exact_comparisons() {
        let half = Rational::half();
        // 1 <= 1/2 * 2 (equality holds)
        assert!(half.scales_at_least(1, 2));
        assert!(!half.scales_at_least(2, 3));
        assert!(Rational::new(1, 3) < half);
        assert!(half <= Rational::new(2, 4));
    }
}
