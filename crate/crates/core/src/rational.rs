//! Exact rational numbers over arbitrary-precision integers.
//!
//! Every correction term and every genus bound in this crate is an
//! [`ExactRational`]. Values are kept in lowest terms with a positive
//! denominator, so structural equality is numeric equality.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    /// `numer / denom`, reduced. Panics if `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::new(numer.into(), denom.into()))
    }

    /// `numer / denom` for machine integers, reduced without big-integer gcd.
    /// Panics if `denom` is zero.
    pub fn from_i128(numer: i128, denom: i128) -> Self {
        assert!(denom != 0, "zero denominator");
        let g = numer.gcd(&denom);
        let (mut n, mut d) = (numer / g, denom / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        ExactRational(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
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

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    /// The value as an `i64`, if it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big_rational(self) -> BigRational {
        self.0
    }
}

impl From<BigRational> for ExactRational {
    fn from(r: BigRational) -> Self {
        ExactRational(r)
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        ExactRational::from_integer(n)
    }
}

impl Default for ExactRational {
    fn default() -> Self {
        ExactRational::zero()
    }
}

/// Always `num/den`, including `0/1` and integers such as `3/1`.
impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    /// Accepts `n/d` (any sign placement, not necessarily reduced) or a bare integer.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(ExactRational::new(n, d))
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }

        impl<'a> $tr<&'a ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational(self.0.$method(&rhs.0))
            }
        }

        impl<'a> $tr<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }

        impl<'a> $tr<ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

impl Sum for ExactRational {
    fn sum<I: Iterator<Item = ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    #[test]
    fn display_is_lowest_terms() {
        assert_eq!(r(2, 8).to_string(), "1/4");
        assert_eq!(r(3, -6).to_string(), "-1/2");
        assert_eq!(ExactRational::zero().to_string(), "0/1");
        assert_eq!(ExactRational::from_integer(25).to_string(), "25/1");
    }

    #[test]
    fn parse_accepts_unreduced_and_bare_integers() {
        assert_eq!("4/-8".parse::<ExactRational>().unwrap(), r(-1, 2));
        assert_eq!("-7".parse::<ExactRational>().unwrap(), r(-7, 1));
        assert!("1/0".parse::<ExactRational>().is_err());
        assert!("x/2".parse::<ExactRational>().is_err());
        assert!("".parse::<ExactRational>().is_err());
    }

    #[test]
    fn serde_uses_string_form() {
        let v = vec![r(1, 4), r(-1, 4), ExactRational::zero()];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"["1/4","-1/4","0/1"]"#);
        let back: Vec<ExactRational> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn machine_constructor_reduces() {
        assert_eq!(ExactRational::from_i128(6, -4), r(-3, 2));
        assert_eq!(ExactRational::from_i128(0, 7).to_string(), "0/1");
        assert_eq!(ExactRational::from_i128(-10, 5), r(-2, 1));
    }

    #[test]
    fn integer_queries() {
        assert_eq!(r(-6, 3).to_i64(), Some(-2));
        assert_eq!(r(1, 3).to_i64(), None);
        assert!(r(0, 5).is_zero());
    }

    fn big() -> impl Strategy<Value = BigInt> {
        (any::<i128>(), any::<bool>()).prop_map(|(x, b)| {
            let v = BigInt::from(x);
            if b {
                v
            } else {
                v >> 3u32
            }
        })
    }

    fn rat() -> impl Strategy<Value = ExactRational> {
        (big(), big()).prop_filter_map("nonzero denominator", |(n, d)| {
            (!d.is_zero()).then(|| ExactRational::new(n, d))
        })
    }

    proptest! {
        #[test]
        fn add_then_sub_is_identity(a in rat(), b in rat()) {
            prop_assert_eq!((&a + &b) - &b, a);
        }

        #[test]
        fn addition_commutes_and_associates(a in rat(), b in rat(), c in rat()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        }

        #[test]
        fn display_parse_roundtrip(a in rat()) {
            let s = a.to_string();
            prop_assert!(!s.contains("/0"));
            prop_assert_eq!(s.parse::<ExactRational>().unwrap(), a);
        }
    }
}
