use std::fmt;

use num_traits::{One, Zero};

use super::coeff::Rational;
use crate::error::{Error, Result};

/// Univariate power series with rational coefficients, truncated after
/// degree `order`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    tag: String,
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series from leading coefficients, padding with zeros (or
    /// dropping extra entries) to reach `order`.
    pub fn new(tag: impl Into<String>, order: usize, mut coeffs: Vec<Rational>) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self {
            tag: tag.into(),
            coeffs,
        }
    }

    pub fn one(tag: impl Into<String>, order: usize) -> Self {
        Self::new(tag, order, vec![Rational::one()])
    }

    pub fn zero(tag: impl Into<String>, order: usize) -> Self {
        Self::new(tag, order, Vec::new())
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_tag(&self, other: &Self) -> Result<()> {
        if self.tag == other.tag {
            Ok(())
        } else {
            Err(Error::TagMismatch(self.tag.clone(), other.tag.clone()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_tag(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|k| self.coeffs[k].clone() + &other.coeffs[k]).collect();
        Ok(Self::new(self.tag.clone(), order, coeffs))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            tag: self.tag.clone(),
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    /// Truncated Cauchy product at `min(self.order, other.order)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_tag(other)?;
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Ok(Self::new(self.tag.clone(), order, out))
    }

    /// Multiplicative inverse up to the truncation order.
    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = a0.recip();
        let order = self.order();
        let mut b: Vec<Rational> = Vec::with_capacity(order + 1);
        b.push(inv0.clone());
        for k in 1..=order {
            let mut acc = Rational::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &b[k - i];
            }
            b.push(-(acc * &inv0));
        }
        Ok(Self::new(self.tag.clone(), order, b))
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*{}", self.tag)?,
                _ => write!(f, "{c}*{}^{k}", self.tag)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.tag, self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyarith::coeff::rat;
    use proptest::prelude::*;

    fn s(order: usize, cs: &[(i64, i64)]) -> TruncatedSeries {
        TruncatedSeries::new("z", order, cs.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    #[test]
    fn one_plus_times_one_minus() {
        let a = s(2, &[(1, 1), (1, 1)]);
        let b = s(2, &[(1, 1), (-1, 1)]);
        assert_eq!(a.mul(&b).unwrap(), s(2, &[(1, 1), (0, 1), (-1, 1)]));
    }

    #[test]
    fn identity_and_order_min() {
        let a = s(3, &[(1, 1), (1, 1)]);
        let one = TruncatedSeries::one("z", 5);
        let p = a.mul(&one).unwrap();
        assert_eq!(p.order(), 3);
        assert_eq!(p, a);
    }

    #[test]
    fn geometric_inverse() {
        assert_eq!(TruncatedSeries::one("z", 4).invert().unwrap(), TruncatedSeries::one("z", 4));
        let a = s(3, &[(1, 1), (1, 1)]);
        assert_eq!(a.invert().unwrap(), s(3, &[(1, 1), (-1, 1), (1, 1), (-1, 1)]));
    }

    #[test]
    fn errors() {
        assert_eq!(s(2, &[(0, 1), (1, 1)]).invert(), Err(Error::ZeroConstantTerm));
        let w = TruncatedSeries::one("w", 2);
        assert!(matches!(s(2, &[(1, 1)]).mul(&w), Err(Error::TagMismatch(..))));
    }

    proptest! {
        #[test]
        fn inverse_round_trip(c0 in 1i64..9, sign in prop::bool::ANY, rest in prop::collection::vec((-9i64..10, 1i64..7), 0..6)) {
            let mut cs = vec![(if sign { c0 } else { -c0 }, 1)];
            cs.extend(rest);
            let order = cs.len() + 1;
            let a = s(order, &cs);
            let prod = a.mul(&a.invert().unwrap()).unwrap();
            prop_assert_eq!(prod, TruncatedSeries::one("z", order));
        }
    }
}
