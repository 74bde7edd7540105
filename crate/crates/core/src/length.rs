//! Edge length arithmetic.
//!
//! Everything in the crate is generic over [`Length`] so the same algorithms
//! run on `f64` for exploration and on exact rationals for verification.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational with machine-word parts.
pub type Rational = Ratio<i64>;

/// Relative tolerance used when comparing floating point lengths.
pub const F64_REL_TOL: f64 = 1e-9;

/// A nonnegative quantity that edge lengths and distances are measured in.
pub trait Length:
    Clone + Debug + PartialEq + PartialOrd + Add<Output = Self> + Sub<Output = Self> + Send + Sync + 'static
{
    /// Whether comparisons are exact (rationals) or tolerance based (floats).
    const EXACT: bool;

    fn zero() -> Self;
    fn half(&self) -> Self;
    fn to_f64(&self) -> f64;
    /// `2^-n`.
    fn dyadic(n: u32) -> Self;
    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Total order; NaN never occurs for valid lengths.
    fn cmp_len(&self, other: &Self) -> Ordering;

    /// `self < other` by more than rounding noise.
    fn clearly_lt(&self, other: &Self) -> bool;

    fn is_positive(&self) -> bool {
        Self::zero().cmp_len(self) == Ordering::Less
    }

    /// Neither is clearly below the other.
    fn nearly_eq(&self, other: &Self) -> bool {
        !self.clearly_lt(other) && !other.clearly_lt(self)
    }

    fn min_len(self, other: Self) -> Self {
        if other.cmp_len(&self) == Ordering::Less {
            other
        } else {
            self
        }
    }

    fn abs_diff(&self, other: &Self) -> Self {
        if self.cmp_len(other) == Ordering::Less {
            other.clone() - self.clone()
        } else {
            self.clone() - other.clone()
        }
    }
}

impl Length for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn half(&self) -> Self {
        self * 0.5
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn dyadic(n: u32) -> Self {
        (-(n as f64)).exp2()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn cmp_len(&self, other: &Self) -> Ordering {
        self.total_cmp(other)
    }
    fn clearly_lt(&self, other: &Self) -> bool {
        let scale = self.abs().max(other.abs()).max(1.0);
        *self < *other - F64_REL_TOL * scale
    }
}

impl Length for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn half(&self) -> Self {
        self / 2
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn dyadic(n: u32) -> Self {
        assert!(n < 63, "2^-{n} does not fit a 64-bit rational");
        Ratio::new(1, 1i64 << n)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }
    fn cmp_len(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
    fn clearly_lt(&self, other: &Self) -> bool {
        self < other
    }
}

impl Length for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn half(&self) -> Self {
        self / BigInt::from(2)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn dyadic(n: u32) -> Self {
        Ratio::new(BigInt::one(), BigInt::one() << n)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(BigInt::from(num), BigInt::from(den))
    }
    fn cmp_len(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
    fn clearly_lt(&self, other: &Self) -> bool {
        self < other
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
}

/// Exact value of a finite float (every finite `f64` is a dyadic rational).
pub fn exact_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Sum of a sequence of lengths.
pub fn sum<L: Length>(it: impl IntoIterator<Item = L>) -> L {
    it.into_iter().fold(L::zero(), |a, b| a + b)
}
