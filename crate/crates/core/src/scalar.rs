//! Scalar flavors: exact arbitrary-precision rationals and hardware floats.
//!
//! Every routine in the crate is written once against [`Scalar`]. Exact
//! flavors reject any membership violation outright; the float flavor
//! re-projects images that drift out of the section by no more than
//! [`DRIFT_TOLERANCE`].

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Largest membership violation a float image may show before it counts as drift.
pub const DRIFT_TOLERANCE: f64 = 1e-9;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whether arithmetic in this flavor is exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_u64(v: u64) -> Self;
    fn from_bigint(v: &BigInt) -> Self;
    fn floor_bigint(&self) -> BigInt;
    /// `floor(self)` in the same flavor.
    fn floor(&self) -> Self;
    /// `floor(self)` clamped to `[0, u64::MAX]`.
    fn floor_u64(&self) -> u64;
    fn to_f64(&self) -> f64;
    /// The exact value, when the flavor carries one.
    fn as_rational(&self) -> Option<BigRational>;
    fn is_zero(&self) -> bool;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Places `value` in the half-open interval `(lower, upper]`.
    ///
    /// Exact flavors return the violation as an error. The float flavor
    /// clamps violations up to [`DRIFT_TOLERANCE`] and reports larger ones.
    fn confine(value: Self, lower: &Self, upper: &Self) -> Result<Self, f64>;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_u64(v: u64) -> Self {
        v as f64
    }
    fn from_bigint(v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }
    fn floor_bigint(&self) -> BigInt {
        BigInt::from_f64(self.floor()).unwrap_or_default()
    }
    fn floor(&self) -> Self {
        f64::floor(*self)
    }
    fn floor_u64(&self) -> u64 {
        // `as` saturates and maps NaN to zero.
        self.floor() as u64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn as_rational(&self) -> Option<BigRational> {
        None
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn confine(value: Self, lower: &Self, upper: &Self) -> Result<Self, f64> {
        if !value.is_finite() {
            return Err(f64::INFINITY);
        }
        if value > *upper {
            let excess = value - upper;
            return if excess <= DRIFT_TOLERANCE {
                Ok(*upper)
            } else {
                Err(excess)
            };
        }
        if value <= *lower {
            let excess = lower - value;
            return if excess <= DRIFT_TOLERANCE {
                Ok(lower.next_up().min(*upper))
            } else {
                Err(excess)
            };
        }
        Ok(value)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_u64(v: u64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn floor_bigint(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }
    fn floor(&self) -> Self {
        BigRational::floor(self)
    }
    fn floor_u64(&self) -> u64 {
        let f = self.floor_bigint();
        if f.is_negative() {
            0
        } else {
            f.to_u64().unwrap_or(u64::MAX)
        }
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn as_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn confine(value: Self, lower: &Self, upper: &Self) -> Result<Self, f64> {
        if value > *upper {
            Err(Scalar::to_f64(&(value - upper.clone())))
        } else if value <= *lower {
            Err(Scalar::to_f64(&(lower.clone() - value)))
        } else {
            Ok(value)
        }
    }
}

/// The exact rational `p/q`.
///
/// # Panics
///
/// Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or an integer into an exact rational.
pub fn parse_ratio(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Neumaier-compensated running sum for long float accumulations.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fraction_forms() {
        assert_eq!(parse_ratio("3/4"), Some(ratio(3, 4)));
        assert_eq!(parse_ratio(" -6/8 "), Some(ratio(-3, 4)));
        assert_eq!(parse_ratio("5"), Some(ratio(5, 1)));
        assert_eq!(parse_ratio("1/0"), None);
        assert_eq!(parse_ratio("0.5"), None);
    }

    #[test]
    fn rational_floor_rounds_toward_minus_infinity() {
        assert_eq!(ratio(7, 2).floor_bigint(), BigInt::from(3));
        assert_eq!(ratio(-7, 2).floor_bigint(), BigInt::from(-4));
        assert_eq!(ratio(-7, 2).floor_u64(), 0);
    }

    #[test]
    fn float_confine_clamps_small_drift_only() {
        assert_eq!(f64::confine(1.0 + 1e-12, &0.5, &1.0), Ok(1.0));
        assert!(f64::confine(1.0 + 1e-6, &0.5, &1.0).is_err());
        let v = f64::confine(0.5 - 1e-12, &0.5, &1.0).unwrap();
        assert!(v > 0.5 && v < 0.5 + 1e-15);
        assert!(BigRational::confine(ratio(1, 2), &ratio(1, 2), &ratio(1, 1)).is_err());
    }

    #[test]
    fn compensated_sum_beats_naive() {
        let mut s = CompensatedSum::new();
        s.extend([1e16, 1.0, -1e16]);
        assert_eq!(s.value(), 1.0);
    }
}
