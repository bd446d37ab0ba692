//! Exact rational differentiation / integration orders.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An exact rational number used for every order and exponent.
///
/// Stored in lowest terms with a positive denominator, so structural
/// equality coincides with numeric equality.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Order(Rational64);

impl Order {
    pub const ZERO: Order = Order(Rational64::new_raw(0, 1));
    pub const ONE: Order = Order(Rational64::new_raw(1, 1));

    /// Builds `numerator / denominator`, reducing to lowest terms.
    pub fn new(numerator: i64, denominator: i64) -> Result<Self, Error> {
        if denominator == 0 {
            return Err(Error::InvalidOrder(format!(
                "{numerator}/0 has a zero denominator"
            )));
        }
        Ok(Order(Rational64::new(numerator, denominator)))
    }

    pub fn from_integer(n: i64) -> Self {
        Order(Rational64::from_integer(n))
    }

    pub fn numerator(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// Smallest integer not below `self`.
    pub fn ceil(&self) -> i64 {
        Integer::div_ceil(&self.numerator(), &self.denominator())
    }

    /// Largest integer not above `self`.
    pub fn floor(&self) -> i64 {
        Integer::div_floor(&self.numerator(), &self.denominator())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn abs(&self) -> Self {
        Order(self.0.abs())
    }
}

impl Default for Order {
    fn default() -> Self {
        Order::ZERO
    }
}

impl From<i64> for Order {
    fn from(n: i64) -> Self {
        Order::from_integer(n)
    }
}

impl Add for Order {
    type Output = Order;
    fn add(self, rhs: Order) -> Order {
        Order(self.0 + rhs.0)
    }
}

impl Sub for Order {
    type Output = Order;
    fn sub(self, rhs: Order) -> Order {
        Order(self.0 - rhs.0)
    }
}

impl Neg for Order {
    type Output = Order;
    fn neg(self) -> Order {
        Order(-self.0)
    }
}

impl Add<i64> for Order {
    type Output = Order;
    fn add(self, rhs: i64) -> Order {
        self + Order::from_integer(rhs)
    }
}

impl Sub<i64> for Order {
    type Output = Order;
    fn sub(self, rhs: i64) -> Order {
        self - Order::from_integer(rhs)
    }
}

impl PartialEq<i64> for Order {
    fn eq(&self, other: &i64) -> bool {
        self.0 == Rational64::from_integer(*other)
    }
}

impl PartialOrd<i64> for Order {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&Rational64::from_integer(*other)))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), self.denominator())
        }
    }
}

impl fmt::Debug for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Order {
    type Err = Error;

    /// Accepts `p` or `p/q`, optionally wrapped in braces and signed.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidOrder(format!("cannot parse {s:?} as a rational"));
        let mut body = s.trim();
        if let Some(inner) = body.strip_prefix('{').and_then(|b| b.strip_suffix('}')) {
            body = inner.trim();
        }
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (body, "1"),
        };
        let num: i64 = num.parse().map_err(|_| bad())?;
        let den: i64 = den.parse().map_err(|_| bad())?;
        if den <= 0 {
            return Err(bad());
        }
        Order::new(num, den)
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Order {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
