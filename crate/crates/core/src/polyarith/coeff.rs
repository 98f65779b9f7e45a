use std::fmt::{Debug, Display};
use std::ops::{AddAssign, Mul, Neg, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision integer coefficients (Hurwitz mode).
pub type Integer = BigInt;
/// Arbitrary-precision rational coefficients, always in lowest terms.
pub type Rational = BigRational;

/// Exact coefficient domain for [`SparsePoly`](super::SparsePoly).
pub trait Coeff:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_integer(v: Integer) -> Self;

    /// Parses the decimal form produced by `Display` (`"p"` or `"p/q"`).
    fn parse_decimal(s: &str) -> Option<Self>;
}

impl Coeff for Integer {
    fn from_integer(v: Integer) -> Self {
        v
    }

    fn parse_decimal(s: &str) -> Option<Self> {
        BigInt::from_str(s.trim()).ok()
    }
}

impl Coeff for Rational {
    fn from_integer(v: Integer) -> Self {
        BigRational::from_integer(v)
    }

    fn parse_decimal(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).ok()?;
                let q = BigInt::from_str(q.trim()).ok()?;
                if q.is_zero() {
                    return None;
                }
                Some(BigRational::new(p, q))
            }
            None => BigInt::from_str(s).ok().map(BigRational::from_integer),
        }
    }
}

/// Shorthand for a rational `p/q`.
pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(v: i64) -> Integer {
    BigInt::from(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced_with_positive_denominator() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn decimal_round_trip() {
        for s in ["0", "-17", "123456789012345678901234567890"] {
            assert_eq!(Integer::parse_decimal(s).unwrap().to_string(), s);
        }
        assert_eq!(Rational::parse_decimal("10/4").unwrap(), rat(5, 2));
        assert_eq!(Rational::parse_decimal("7").unwrap(), rat(7, 1));
        assert!(Rational::parse_decimal("1/0").is_none());
        assert!(Integer::parse_decimal("1.5").is_none());
    }

    #[test]
    fn no_overflow_at_large_magnitude() {
        let big = int(i64::MAX);
        let sq = big.clone() * &big;
        assert_eq!(sq.to_string(), "85070591730234615847396907784232501249");
    }
}
